"""End-to-end orchestration: preprocess, align, decompose, transfer,
recompose, optional air-bangs fusion, encode.

The reference is always warped onto the input's geometry; the input is
never warped.  All stages are pure, so identical configs produce
byte-identical outputs.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import align, imgcore, layers, masks, preprocess, transfer
from .masks import Region


class ConfigError(ValueError):
    """Invalid or inconsistent pipeline configuration."""


class PipelineStageError(RuntimeError):
    """A pipeline stage failed; carries the stage name."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}': {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class PipelineConfig:
    input_image: Path
    input_landmarks: Path
    input_labels: Path
    reference_image: Path
    reference_landmarks: Path
    reference_labels: Path
    out_path: Path
    transfer_params: transfer.TransferParams = field(
        default_factory=transfer.TransferParams
    )
    wls_params: layers.WlsParams = field(default_factory=layers.WlsParams)
    whitening: preprocess.ColorBalanceParams = field(
        default_factory=lambda: preprocess.DEFAULT_WHITENING
    )
    smoothing: preprocess.BilateralParams = field(
        default_factory=preprocess.BilateralParams
    )
    skip_preprocess: bool = False
    airbangs: bool = False
    soften_sigma: float = 6.0
    dump_dir: Path | None = None

    def validate(self) -> None:
        for name in (
            "input_image",
            "input_landmarks",
            "input_labels",
            "reference_image",
            "reference_landmarks",
            "reference_labels",
        ):
            p = Path(getattr(self, name))
            if not p.is_file():
                raise ConfigError(f"{name}: no such file: {p}")
        if self.soften_sigma <= 0:
            raise ConfigError("soften_sigma must be positive")


@dataclass
class StageTiming:
    name: str
    seconds: float


@dataclass
class PipelineReport:
    stages: list[StageTiming]
    solver_iterations: dict[str, int]
    output_path: Path
    warnings: list[str]

    @property
    def total_seconds(self) -> float:
        return sum(s.seconds for s in self.stages)

    def timings_dict(self) -> dict[str, float]:
        return {s.name: s.seconds for s in self.stages}


def combined_regions(
    input_labels: masks.LabelMap, warped_ref_labels: masks.LabelMap
) -> np.ndarray:
    """Region map gating the transfer.

    A pixel receives transfer only where both the input parse and the
    warped reference parse are skin-like; this keeps reference hair from
    being sampled onto the input face.  C2 follows the input parse.
    """
    r_in = masks.classify_regions(input_labels)
    r_ref = masks.classify_regions(warped_ref_labels)
    out = np.full(r_in.shape, Region.IGNORE, dtype=np.uint8)
    out[(r_in == Region.C1) & (r_ref == Region.C1)] = Region.C1
    out[r_in == Region.C2] = Region.C2
    return out


def _dump(dump_dir: Path | None, name: str, array: np.ndarray) -> None:
    if dump_dir is None:
        return
    from PIL import Image

    dump_dir.mkdir(parents=True, exist_ok=True)
    a = np.asarray(array, dtype=np.float64)
    if a.ndim == 2:
        lo, hi = a.min(), a.max()
        scaled = (a - lo) / (hi - lo) * 255.0 if hi > lo else np.zeros_like(a)
        Image.fromarray(scaled.astype(np.uint8), mode="L").save(
            dump_dir / f"{name}.png"
        )
    else:
        Image.fromarray(a.astype(np.uint8), mode="RGB").save(dump_dir / f"{name}.png")


def run_pipeline(config: PipelineConfig) -> PipelineReport:
    """Execute the full transfer; writes the output image and returns a
    report with per-stage wall-clock timings and solver iteration counts.

    No partial output file is left behind on failure.
    """
    config.validate()
    dump_dir = Path(config.dump_dir) if config.dump_dir else None
    stages: list[StageTiming] = []
    iterations: dict[str, int] = {}
    warnings: list[str] = []

    def run_stage(name, fn):
        t0 = time.perf_counter()
        try:
            result = fn()
        except Exception as e:
            raise PipelineStageError(name, e) from e
        stages.append(StageTiming(name, time.perf_counter() - t0))
        return result

    def load():
        inp = imgcore.load_image(config.input_image)
        ref = imgcore.load_image(config.reference_image)
        in_lm = align.load_landmarks(config.input_landmarks, inp)
        ref_lm = align.load_landmarks(config.reference_landmarks, ref)
        in_labels = masks.load_label_map(
            config.input_labels, (inp.width, inp.height)
        )
        ref_labels = masks.load_label_map(
            config.reference_labels, (ref.width, ref.height)
        )
        return inp, ref, in_lm, ref_lm, in_labels, ref_labels

    inp, ref, in_lm, ref_lm, in_labels, ref_labels = run_stage("load", load)

    def do_preprocess():
        if config.skip_preprocess:
            return inp
        balanced = preprocess.color_balance(inp, config.whitening)
        skin = in_labels.labels == masks.SKIN
        lab = imgcore.rgb_to_lab(balanced)
        smoothed = preprocess.bilateral_filter(lab, config.smoothing, mask=skin)
        return imgcore.lab_to_rgb(smoothed)

    inp_pre = run_stage("preprocess", do_preprocess)
    _dump(dump_dir, "preprocessed_input", inp_pre.pixels)

    def do_align():
        dst_size = (inp.width, inp.height)
        warped = align.warp_image(ref, ref_lm, in_lm, dst_size)
        warped_labels = masks.LabelMap(
            align.warp_labels(ref_labels.labels, ref_lm, in_lm, dst_size)
        )
        return warped, warped_labels

    warped_ref, warped_ref_labels = run_stage("align", do_align)
    _dump(dump_dir, "warped_reference", warped_ref.pixels)
    _dump(dump_dir, "warped_reference_labels", warped_ref_labels.labels)

    def do_decompose():
        lab_in = imgcore.rgb_to_lab(inp_pre)
        lab_ref = imgcore.rgb_to_lab(warped_ref)
        s_in, it_in = layers.wls_filter_detailed(lab_in.L, config.wls_params)
        s_ref, it_ref = layers.wls_filter_detailed(lab_ref.L, config.wls_params)
        iterations["wls_input"] = it_in
        iterations["wls_reference"] = it_ref
        I = layers.LayerSet(s=s_in, d=lab_in.L - s_in, a=lab_in.a, b=lab_in.b)
        R = layers.LayerSet(s=s_ref, d=lab_ref.L - s_ref, a=lab_ref.a, b=lab_ref.b)
        return I, R

    I_layers, R_layers = run_stage("decompose", do_decompose)
    for tag, ls in (("input", I_layers), ("reference", R_layers)):
        _dump(dump_dir, f"{tag}_structure", ls.s)
        _dump(dump_dir, f"{tag}_detail", ls.d + 50.0)  # offset-encoded
        _dump(dump_dir, f"{tag}_color_a", ls.a)
        _dump(dump_dir, f"{tag}_color_b", ls.b)

    def do_transfer():
        regions = combined_regions(in_labels, warped_ref_labels)
        _dump(dump_dir, "regions", regions.astype(np.float64) * 100)
        lab_out = transfer.apply_transfer(
            I_layers, R_layers, regions, config.transfer_params
        )
        return imgcore.lab_to_rgb(lab_out)

    makeup = run_stage("transfer", do_transfer)

    def do_fuse():
        if not config.airbangs:
            return makeup
        soft = masks.soften(in_labels, config.soften_sigma)
        return masks.fuse(inp, makeup, soft, masks.DEFAULT_RETENTION)

    fused = run_stage("fuse", do_fuse)

    def do_encode():
        out_path = Path(config.out_path)
        tmp = out_path.with_name(f".{out_path.stem}.tmp{out_path.suffix}")
        imgcore.save_image(fused, tmp)
        os.replace(tmp, out_path)
        return out_path

    out_path = run_stage("encode", do_encode)
    return PipelineReport(
        stages=stages,
        solver_iterations=iterations,
        output_path=out_path,
        warnings=warnings,
    )


def config_from_dict(doc: dict) -> PipelineConfig:
    """Build a config from a flat JSON-style mapping (the config-file and
    HTTP parameter schema; CLI flags override these keys)."""
    try:
        tp = transfer.TransferParams(
            alpha=float(doc.get("alpha", 0.95)),
            beta=float(doc.get("beta", 30.0)),
            illumination_enabled=bool(doc.get("illumination", True)),
            structure_mode=transfer.StructureMode(
                doc.get("structure_mode", "illumination")
            ),
        )
        wp = layers.WlsParams(
            lam=float(doc.get("wls.lambda", 0.2)),
            alpha=float(doc.get("wls.alpha", 1.2)),
            epsilon=float(doc.get("wls.epsilon", 1e-4)),
            cg_tolerance=float(doc.get("wls.cg_tol", 1e-4)),
            cg_max_iters=int(doc.get("wls.cg_max_iters", 1000)),
        )
        whitening = preprocess.ColorBalanceParams(
            shadows=tuple(doc.get("whitening.shadows", (0.0, 0.0, 0.0))),
            midtones=tuple(doc.get("whitening.midtones", (0.04, 0.03, 0.02))),
            highlights=tuple(doc.get("whitening.highlights", (0.0, 0.0, 0.0))),
        )
        smoothing = preprocess.BilateralParams(
            sigma_spatial=float(doc.get("smoothing.sigma_spatial", 4.0)),
            sigma_range=float(doc.get("smoothing.sigma_range", 8.0)),
            kernel_radius=int(doc.get("smoothing.kernel_radius", 8)),
        )
    except (ValueError, TypeError) as e:
        raise ConfigError(str(e)) from e
    return PipelineConfig(
        input_image=Path(doc["input"]),
        input_landmarks=Path(doc["input_landmarks"]),
        input_labels=Path(doc["input_labels"]),
        reference_image=Path(doc["reference"]),
        reference_landmarks=Path(doc["reference_landmarks"]),
        reference_labels=Path(doc["reference_labels"]),
        out_path=Path(doc["out"]),
        transfer_params=tp,
        wls_params=wp,
        whitening=whitening,
        smoothing=smoothing,
        skip_preprocess=bool(doc.get("skip_preprocess", False)),
        airbangs=bool(doc.get("airbangs", False)),
        soften_sigma=float(doc.get("soften_sigma", 6.0)),
        dump_dir=Path(doc["dump_layers"]) if doc.get("dump_layers") else None,
    )


def load_config_file(path) -> dict:
    with open(path) as f:
        doc = json.load(f)
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: config file must hold a JSON object")
    return doc
