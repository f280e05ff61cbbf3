"""Landmark ingestion and piecewise-affine warping of the reference
image (and its label map) onto the input face's geometry.

Canonical 90-point landmark ordering used by every fixture and file:

    0-20   jawline (left temple to right temple)
    21-28  right eyebrow
    29-36  left eyebrow
    37-48  nose
    49-58  right eye
    59-68  left eye
    69-80  outer lip
    81-89  inner lip

Landmark files are JSON documents with a single key ``"points"`` holding
an array of 90 ``[x, y]`` pairs in pixel units (subpixel allowed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.spatial import Delaunay

from .imgcore import RasterImage

LANDMARK_COUNT = 90

LANDMARK_GROUPS = {
    "jawline": (0, 21),
    "right_brow": (21, 29),
    "left_brow": (29, 37),
    "nose": (37, 49),
    "right_eye": (49, 59),
    "left_eye": (59, 69),
    "outer_lip": (69, 81),
    "inner_lip": (81, 90),
}


class LandmarkError(ValueError):
    """Base class for landmark ingestion failures."""


class LandmarkFormatError(LandmarkError):
    """File is not a valid landmark document."""


class LandmarkCountError(LandmarkError):
    """Wrong number of points."""


class LandmarkBoundsError(LandmarkError):
    """A point lies outside the image bounds."""


class MeshDegeneracyError(ValueError):
    """Duplicate vertices or a degenerate triangle."""


@dataclass(frozen=True)
class LandmarkSet:
    """Ordered set of exactly 90 subpixel (x, y) coordinates."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.shape != (LANDMARK_COUNT, 2):
            raise LandmarkCountError(
                f"expected {LANDMARK_COUNT} (x, y) points, got shape {pts.shape}"
            )
        if not np.all(np.isfinite(pts)):
            raise LandmarkFormatError("landmark coordinates must be finite")
        pts = np.ascontiguousarray(pts)
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    def check_bounds(self, width: int, height: int) -> None:
        x, y = self.points[:, 0], self.points[:, 1]
        bad = (x < 0) | (x > width - 1) | (y < 0) | (y > height - 1)
        if np.any(bad):
            k = int(np.argmax(bad))
            raise LandmarkBoundsError(
                f"landmark {k} at {tuple(self.points[k])} outside {width}x{height}"
            )


@dataclass(frozen=True)
class TriangleMesh:
    """Landmarks plus 8 border anchors, Delaunay-triangulated over the frame."""

    vertices: np.ndarray  # (98, 2)
    triangles: np.ndarray  # (M, 3) vertex index triples


def load_landmarks(path, image: RasterImage) -> LandmarkSet:
    """Load and validate a 90-point landmark file against an image's bounds."""
    try:
        with open(path) as f:
            doc = json.load(f)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise LandmarkFormatError(f"{path}: not valid JSON: {e}") from e
    if not isinstance(doc, dict) or "points" not in doc:
        raise LandmarkFormatError(f"{path}: missing 'points' key")
    raw = doc["points"]
    if not isinstance(raw, list) or len(raw) != LANDMARK_COUNT:
        raise LandmarkCountError(
            f"{path}: expected {LANDMARK_COUNT} points, got {len(raw) if isinstance(raw, list) else type(raw)}"
        )
    try:
        pts = np.array(raw, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise LandmarkFormatError(f"{path}: points are not numeric pairs") from e
    if pts.shape != (LANDMARK_COUNT, 2):
        raise LandmarkFormatError(f"{path}: points are not [x, y] pairs")
    lm = LandmarkSet(pts)
    lm.check_bounds(image.width, image.height)
    return lm


def save_landmarks(lm: LandmarkSet, path) -> None:
    with open(path, "w") as f:
        json.dump({"points": lm.points.tolist()}, f)


def border_anchors(width: int, height: int) -> np.ndarray:
    """Four corners plus four edge midpoints of the image rectangle."""
    w, h = float(width - 1), float(height - 1)
    return np.array(
        [
            [0.0, 0.0], [w, 0.0], [w, h], [0.0, h],
            [w / 2.0, 0.0], [w, h / 2.0], [w / 2.0, h], [0.0, h / 2.0],
        ]
    )


def _triangle_areas(vertices: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    p0 = vertices[triangles[:, 0]]
    p1 = vertices[triangles[:, 1]]
    p2 = vertices[triangles[:, 2]]
    e1, e2 = p1 - p0, p2 - p0
    return 0.5 * np.abs(e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])


def build_mesh(landmarks: LandmarkSet, width: int, height: int) -> TriangleMesh:
    """Delaunay triangulation over the 90 landmarks plus 8 border anchors.

    Deterministic for identical input (qhull with fixed options and input
    order). Raises MeshDegeneracyError on duplicate points (within 1e-6 px)
    or degenerate triangles.
    """
    vertices = np.vstack([landmarks.points, border_anchors(width, height)])
    diff = vertices[:, None, :] - vertices[None, :, :]
    close = np.all(np.abs(diff) <= 1e-6, axis=-1)
    np.fill_diagonal(close, False)
    if np.any(close):
        i, j = np.argwhere(close)[0]
        raise MeshDegeneracyError(f"vertices {i} and {j} coincide within 1e-6 px")
    tri = Delaunay(vertices)
    triangles = np.array(tri.simplices, dtype=np.int64)
    areas = _triangle_areas(vertices, triangles)
    if np.any(areas <= 1e-9):
        raise MeshDegeneracyError("triangulation produced a degenerate triangle")
    return TriangleMesh(vertices=vertices, triangles=triangles)


def _affine_maps(dst_verts, src_verts, triangles):
    """Per-triangle affine matrices mapping destination to source coords.

    Returns (M, 2, 3) where src = A @ [x, y, 1].
    """
    n = len(triangles)
    maps = np.empty((n, 2, 3))
    for t, (i, j, k) in enumerate(triangles):
        D = np.array(
            [
                [dst_verts[i, 0], dst_verts[j, 0], dst_verts[k, 0]],
                [dst_verts[i, 1], dst_verts[j, 1], dst_verts[k, 1]],
                [1.0, 1.0, 1.0],
            ]
        )
        S = np.array(
            [
                [src_verts[i, 0], src_verts[j, 0], src_verts[k, 0]],
                [src_verts[i, 1], src_verts[j, 1], src_verts[k, 1]],
            ]
        )
        try:
            maps[t] = S @ np.linalg.inv(D)
        except np.linalg.LinAlgError as e:
            raise MeshDegeneracyError(f"destination triangle {t} is degenerate") from e
    return maps


def _source_coords(dst_lm: LandmarkSet, src_lm: LandmarkSet,
                   dst_size: tuple[int, int], src_size: tuple[int, int]):
    """Map every destination pixel to source coordinates.

    Destination pixels are located in the destination mesh; that triangle's
    affine map (destination triangle -> corresponding source triangle) gives
    the source sample position.
    """
    dst_w, dst_h = dst_size
    src_w, src_h = src_size
    mesh = build_mesh(dst_lm, dst_w, dst_h)
    src_verts = np.vstack([src_lm.points, border_anchors(src_w, src_h)])
    maps = _affine_maps(mesh.vertices, src_verts, mesh.triangles)

    tri = Delaunay(mesh.vertices)
    ys, xs = np.mgrid[0:dst_h, 0:dst_w]
    pts = np.column_stack([xs.ravel(), ys.ravel()]).astype(np.float64)
    simplex = tri.find_simplex(pts)
    # hull covers the full rectangle; guard rounding at the very boundary
    missing = simplex < 0
    if np.any(missing):
        simplex[missing] = tri.find_simplex(pts[missing], bruteforce=True, tol=1e-6)
    simplex = np.clip(simplex, 0, len(mesh.triangles) - 1)

    A = maps[simplex]  # (N, 2, 3)
    ones = np.ones(len(pts))
    homog = np.column_stack([pts, ones])  # (N, 3)
    src_xy = np.einsum("nij,nj->ni", A, homog)
    sx = src_xy[:, 0].reshape(dst_h, dst_w)
    sy = src_xy[:, 1].reshape(dst_h, dst_w)
    return sx, sy


def _bilinear_sample(channels: np.ndarray, sx: np.ndarray, sy: np.ndarray):
    h, w = channels.shape[:2]
    x = np.clip(sx, 0.0, w - 1.0)
    y = np.clip(sy, 0.0, h - 1.0)
    x0 = np.floor(x).astype(np.int64)
    y0 = np.floor(y).astype(np.int64)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = (x - x0)[..., None]
    fy = (y - y0)[..., None]
    c = channels.astype(np.float64)
    top = c[y0, x0] * (1 - fx) + c[y0, x1] * fx
    bot = c[y1, x0] * (1 - fx) + c[y1, x1] * fx
    return top * (1 - fy) + bot * fy


def warp_image(
    src: RasterImage,
    src_lm: LandmarkSet,
    dst_lm: LandmarkSet,
    dst_size: tuple[int, int],
) -> RasterImage:
    """Piecewise-affine warp with bilinear sampling.

    Landmark k of the source maps onto landmark k of the destination;
    pixels outside all face triangles follow the border-anchored triangles
    so the whole frame warps.
    """
    sx, sy = _source_coords(dst_lm, src_lm, dst_size, (src.width, src.height))
    out = _bilinear_sample(src.pixels, sx, sy)
    return RasterImage(np.clip(np.round(out), 0, 255).astype(np.uint8))


def warp_field(src: np.ndarray, src_lm, dst_lm, dst_size) -> np.ndarray:
    """Same geometry as warp_image for a single float field."""
    sx, sy = _source_coords(dst_lm, src_lm, dst_size, (src.shape[1], src.shape[0]))
    return _bilinear_sample(src[..., None], sx, sy)[..., 0]


def warp_labels(src_labels: np.ndarray, src_lm, dst_lm, dst_size) -> np.ndarray:
    """Warp a categorical label array with nearest-neighbor sampling."""
    h, w = src_labels.shape
    sx, sy = _source_coords(dst_lm, src_lm, dst_size, (w, h))
    xi = np.clip(np.round(sx), 0, w - 1).astype(np.int64)
    yi = np.clip(np.round(sy), 0, h - 1).astype(np.int64)
    return src_labels[yi, xi]
