"""HTTP service backing the interactive studio UI.

Endpoints:
    GET  /health      -> {"status": "ok", "version": ...}
    GET  /references  -> bundled reference gallery manifest
    POST /transfer    -> multipart upload; returns PNG bytes with
                         X-Stage-Timings and X-Result-Sha256 headers

Each request runs an isolated pipeline invocation; nothing persists
beyond the request lifetime.
"""

from __future__ import annotations

import hashlib
import json
import tempfile
from pathlib import Path

from fastapi import FastAPI, File, Form, HTTPException, UploadFile
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from . import __version__, pipeline
from .pipeline import ConfigError, PipelineStageError

MAX_SIDE = 2048


def _load_manifest(asset_dir: Path) -> list[dict]:
    manifest = asset_dir / "references" / "manifest.json"
    if not manifest.is_file():
        return []
    with open(manifest) as f:
        return json.load(f)


def _check_image_size(path: Path) -> None:
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(path) as im:
            w, h = im.size
    except (UnidentifiedImageError, OSError) as e:
        raise HTTPException(status_code=400, detail=f"not a decodable image: {e}")
    if w > MAX_SIDE or h > MAX_SIDE:
        raise HTTPException(
            status_code=413, detail=f"image {w}x{h} exceeds {MAX_SIDE}x{MAX_SIDE}"
        )


def create_app(asset_dir: Path | str | None = None) -> FastAPI:
    asset_dir = Path(asset_dir) if asset_dir else None
    app = FastAPI(title="makeuplab", version=__version__)

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/references")
    def references():
        if asset_dir is None:
            return []
        return _load_manifest(asset_dir)

    @app.post("/transfer")
    async def transfer(
        input: UploadFile = File(...),
        input_landmarks: UploadFile = File(...),
        input_labels: UploadFile = File(...),
        reference_id: str | None = Form(None),
        reference: UploadFile | None = File(None),
        reference_landmarks: UploadFile | None = File(None),
        reference_labels: UploadFile | None = File(None),
        alpha: float = Form(0.95),
        beta: float = Form(30.0),
        illumination: bool = Form(True),
        structure_mode: str = Form("illumination"),
        airbangs: bool = Form(False),
        skip_preprocess: bool = Form(False),
        soften_sigma: float = Form(6.0),
    ):
        if not 0.0 <= alpha <= 1.0:
            raise HTTPException(422, detail=f"alpha must be in [0, 1], got {alpha}")
        if beta <= 0:
            raise HTTPException(422, detail=f"beta must be positive, got {beta}")
        if structure_mode not in ("illumination", "literal", "keep-input"):
            raise HTTPException(422, detail=f"unknown structure_mode {structure_mode!r}")
        if soften_sigma <= 0:
            raise HTTPException(422, detail="soften_sigma must be positive")

        with tempfile.TemporaryDirectory(prefix="makeuplab-") as tmp:
            tmp = Path(tmp)

            async def save_upload(upload: UploadFile, name: str) -> Path:
                path = tmp / name
                with open(path, "wb") as f:
                    f.write(await upload.read())
                return path

            in_img = await save_upload(input, "input.png")
            in_lm = await save_upload(input_landmarks, "input.landmarks.json")
            in_lbl = await save_upload(input_labels, "input.labels.png")
            _check_image_size(in_img)

            if reference is not None:
                if reference_landmarks is None or reference_labels is None:
                    raise HTTPException(
                        422,
                        detail="uploaded reference needs landmarks and labels too",
                    )
                ref_img = await save_upload(reference, "reference.png")
                ref_lm = await save_upload(
                    reference_landmarks, "reference.landmarks.json"
                )
                ref_lbl = await save_upload(reference_labels, "reference.labels.png")
                _check_image_size(ref_img)
            elif reference_id is not None:
                if asset_dir is None:
                    raise HTTPException(404, detail="no reference gallery configured")
                entries = {e["id"]: e for e in _load_manifest(asset_dir)}
                if reference_id not in entries:
                    raise HTTPException(
                        404, detail=f"unknown reference id {reference_id!r}"
                    )
                e = entries[reference_id]
                base = asset_dir / "references"
                ref_img = base / e["image"]
                ref_lm = base / e["landmarks"]
                ref_lbl = base / e["labels"]
            else:
                raise HTTPException(
                    422, detail="provide reference_id or an uploaded reference triple"
                )

            out_path = tmp / "out.png"
            doc = {
                "input": str(in_img),
                "input_landmarks": str(in_lm),
                "input_labels": str(in_lbl),
                "reference": str(ref_img),
                "reference_landmarks": str(ref_lm),
                "reference_labels": str(ref_lbl),
                "out": str(out_path),
                "alpha": alpha,
                "beta": beta,
                "illumination": illumination,
                "structure_mode": structure_mode,
                "airbangs": airbangs,
                "skip_preprocess": skip_preprocess,
                "soften_sigma": soften_sigma,
            }
            try:
                config = pipeline.config_from_dict(doc)
                report = pipeline.run_pipeline(config)
            except ConfigError as e:
                raise HTTPException(400, detail=str(e))
            except PipelineStageError as e:
                return JSONResponse(
                    status_code=500,
                    content={"stage": e.stage, "reason": str(e.cause)},
                )

            data = out_path.read_bytes()

        return Response(
            content=data,
            media_type="image/png",
            headers={
                "X-Stage-Timings": json.dumps(report.timings_dict()),
                "X-Result-Sha256": hashlib.sha256(data).hexdigest(),
            },
        )

    if asset_dir is not None and (asset_dir / "references").is_dir():
        # serves the gallery image/landmark/label files; the exact-path
        # GET /references route above still returns the manifest
        app.mount(
            "/references",
            StaticFiles(directory=asset_dir / "references"),
            name="references",
        )
    if asset_dir is not None and (asset_dir / "ui").is_dir():
        app.mount("/", StaticFiles(directory=asset_dir / "ui", html=True), name="ui")

    return app


def serve(bind: str = "127.0.0.1:8000", asset_dir=None) -> None:
    """Run the service until interrupted."""
    import uvicorn

    host, _, port = bind.partition(":")
    uvicorn.run(create_app(asset_dir), host=host or "127.0.0.1", port=int(port or 8000))
