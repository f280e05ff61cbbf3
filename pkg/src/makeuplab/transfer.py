"""Per-layer makeup transfer math.

Detail is copied from the reference, color is alpha-blended, and
structure is either kept, copied literally, or corrected by illumination
transfer, all gated to the skin-like region class.  The illumination
rule darkens the input structure toward the reference where the input
is brighter:

    O_s(p) = I_s(p) - (I_s(p) - R_s(p))^2 / beta   if I_s(p) > R_s(p)
    O_s(p) = I_s(p)                                 otherwise

with the raw value clamped to [R_s(p), I_s(p)] so transfer moves toward,
never past, the reference illumination.  beta lives on the L in [0, 100]
scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .imgcore import ImageShapeError, LabImage, ScalarField
from .layers import LayerSet, recompose
from .masks import Region


class StructureMode(Enum):
    ILLUMINATION = "illumination"
    LITERAL = "literal"
    KEEP_INPUT = "keep-input"


@dataclass(frozen=True)
class TransferParams:
    alpha: float = 0.95
    beta: float = 30.0
    illumination_enabled: bool = True
    structure_mode: StructureMode = StructureMode.ILLUMINATION

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")

    def effective_mode(self) -> StructureMode:
        if (
            self.structure_mode is StructureMode.ILLUMINATION
            and not self.illumination_enabled
        ):
            return StructureMode.KEEP_INPUT
        return self.structure_mode


def _check_shapes(*fields):
    shapes = {f.shape for f in fields}
    if len(shapes) != 1:
        raise ImageShapeError(f"field shapes differ: {shapes}")


def transfer_detail(I: LayerSet, R: LayerSet, regions: np.ndarray) -> ScalarField:
    """Detail is copied from the reference inside the skin-like region."""
    _check_shapes(I.d, R.d, regions)
    return np.where(regions == Region.C1, R.d, I.d)


def transfer_color(
    I_a: ScalarField,
    I_b: ScalarField,
    R_a: ScalarField,
    R_b: ScalarField,
    regions: np.ndarray,
    alpha: float,
) -> tuple[ScalarField, ScalarField]:
    """Alpha-blend the chroma channels inside the skin-like region."""
    _check_shapes(I_a, I_b, R_a, R_b, regions)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    c1 = regions == Region.C1
    out_a = np.where(c1, (1.0 - alpha) * I_a + alpha * R_a, I_a)
    out_b = np.where(c1, (1.0 - alpha) * I_b + alpha * R_b, I_b)
    return out_a, out_b


def illumination_transfer(
    I_s: ScalarField, R_s: ScalarField, regions: np.ndarray, beta: float
) -> ScalarField:
    """Darken the input structure toward the reference where it is brighter."""
    _check_shapes(I_s, R_s, regions)
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    raw = I_s - (I_s - R_s) ** 2 / beta
    corrected = np.clip(raw, R_s, I_s)
    active = (regions == Region.C1) & (I_s > R_s)
    return np.where(active, corrected, I_s)


def transfer_structure_literal(
    I_s: ScalarField, R_s: ScalarField, regions: np.ndarray
) -> ScalarField:
    """Copy the reference structure verbatim inside the skin-like region."""
    _check_shapes(I_s, R_s, regions)
    return np.where(regions == Region.C1, R_s, I_s)


def apply_transfer(
    I_layers: LayerSet,
    R_layers: LayerSet,
    regions: np.ndarray,
    params: TransferParams,
) -> LabImage:
    """Combine the per-layer transfers and recompose to a Lab image.

    Pixels outside the skin-like region carry the input L, a, b untouched.
    """
    mode = params.effective_mode()
    if mode is StructureMode.ILLUMINATION:
        O_s = illumination_transfer(I_layers.s, R_layers.s, regions, params.beta)
    elif mode is StructureMode.LITERAL:
        O_s = transfer_structure_literal(I_layers.s, R_layers.s, regions)
    else:
        O_s = I_layers.s.copy()
    O_d = transfer_detail(I_layers, R_layers, regions)
    O_a, O_b = transfer_color(
        I_layers.a, I_layers.b, R_layers.a, R_layers.b, regions, params.alpha
    )
    out = recompose(LayerSet(s=O_s, d=O_d, a=O_a, b=O_b))

    c1 = regions == Region.C1
    input_L = np.clip(I_layers.s + I_layers.d, 0.0, 100.0)
    L = np.where(c1, out.L, input_L)
    a = np.where(c1, out.a, I_layers.a)
    b = np.where(c1, out.b, I_layers.b)
    return LabImage(L=L, a=a, b=b)
