"""Deterministic synthetic face fixtures.

Landmark detection and facial parsing are external systems, so tests and
the bundled reference gallery use procedurally drawn faces with exactly
matching landmarks and label maps.  Everything is seeded and therefore
byte-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import masks as mk
from .align import LandmarkSet, save_landmarks
from .imgcore import RasterImage, save_image
from .masks import LabelMap, save_label_map


@dataclass(frozen=True)
class FaceGeometry:
    cx: float
    cy: float
    half_w: float
    half_h: float
    fringe: bool = False  # air-bangs across the forehead

    @classmethod
    def default(cls, width: int, height: int, fringe: bool = False) -> "FaceGeometry":
        return cls(
            cx=width * 0.5,
            cy=height * 0.54,
            half_w=width * 0.31,
            half_h=height * 0.40,
            fringe=fringe,
        )


def _ellipse_points(cx, cy, rx, ry, thetas):
    return np.column_stack([cx + rx * np.cos(thetas), cy + ry * np.sin(thetas)])


def face_landmarks(g: FaceGeometry) -> LandmarkSet:
    """Canonical 90-point landmark set for a synthetic face."""
    fw, fh = g.half_w, g.half_h
    pts = []

    # jawline 0-20: left temple through chin to right temple (y grows down)
    thetas = np.pi - np.arange(21) * (np.pi / 20.0)
    pts.append(_ellipse_points(g.cx, g.cy, fw, fh, thetas))

    def brow(sign):
        bx = g.cx + sign * 0.42 * fw
        by = g.cy - 0.45 * fh
        t = np.pi + np.arange(8) * (np.pi / 7.0)  # upper arc
        return _ellipse_points(bx, by, 0.22 * fw, 0.06 * fh, t)

    pts.append(brow(-1))  # right brow (viewer's left)
    pts.append(brow(+1))  # left brow

    # nose 37-48
    t = np.arange(12) * (2 * np.pi / 12.0)
    pts.append(_ellipse_points(g.cx, g.cy + 0.02 * fh, 0.13 * fw, 0.24 * fh, t))

    def eye(sign):
        ex = g.cx + sign * 0.42 * fw
        ey = g.cy - 0.25 * fh
        t = np.arange(10) * (2 * np.pi / 10.0)
        return _ellipse_points(ex, ey, 0.18 * fw, 0.09 * fh, t)

    pts.append(eye(-1))  # right eye
    pts.append(eye(+1))  # left eye

    # outer lip 69-80, inner lip 81-89
    ly = g.cy + 0.55 * fh
    t = np.arange(12) * (2 * np.pi / 12.0)
    pts.append(_ellipse_points(g.cx, ly, 0.35 * fw, 0.12 * fh, t))
    t = np.arange(9) * (2 * np.pi / 9.0)
    pts.append(_ellipse_points(g.cx, ly, 0.20 * fw, 0.05 * fh, t))

    return LandmarkSet(np.vstack(pts))


def _inside(xs, ys, cx, cy, rx, ry):
    return ((xs - cx) / rx) ** 2 + ((ys - cy) / ry) ** 2 <= 1.0


def face_labels(g: FaceGeometry, width: int, height: int) -> LabelMap:
    """Label map consistent with face_landmarks for the same geometry."""
    ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
    fw, fh = g.half_w, g.half_h
    labels = np.full((height, width), mk.BACKGROUND, dtype=np.uint8)

    hair = _inside(xs, ys, g.cx, g.cy - 0.15 * fh, 1.15 * fw, 1.12 * fh) & (
        ys < g.cy + 0.2 * fh
    )
    labels[hair] = mk.HAIR
    labels[_inside(xs, ys, g.cx, g.cy, fw, fh)] = mk.SKIN

    if g.fringe:
        band = (
            (np.abs(xs - g.cx) < 0.55 * fw)
            & (ys > g.cy - 0.92 * fh)
            & (ys < g.cy - 0.62 * fh)
        )
        labels[band & (labels == mk.SKIN)] = mk.HAIR

    for sign, brow, eye in (
        (-1, mk.RIGHT_EYEBROW, mk.RIGHT_EYE),
        (+1, mk.LEFT_EYEBROW, mk.LEFT_EYE),
    ):
        bx = g.cx + sign * 0.42 * fw
        labels[_inside(xs, ys, bx, g.cy - 0.47 * fh, 0.22 * fw, 0.05 * fh)] = brow
        labels[_inside(xs, ys, bx, g.cy - 0.25 * fh, 0.18 * fw, 0.09 * fh)] = eye

    labels[_inside(xs, ys, g.cx, g.cy + 0.02 * fh, 0.13 * fw, 0.24 * fh)] = mk.NOSE

    ly = g.cy + 0.55 * fh
    lip = _inside(xs, ys, g.cx, ly, 0.35 * fw, 0.12 * fh)
    labels[lip & (ys < ly)] = mk.UPPER_LIP
    labels[lip & (ys >= ly)] = mk.LOWER_LIP
    labels[_inside(xs, ys, g.cx, ly, 0.20 * fw, 0.05 * fh)] = mk.MOUTH_CAVITY
    return LabelMap(labels)


# (r, g, b) base colors per class for the two fixture styles
_PLAIN_COLORS = {
    mk.BACKGROUND: (188, 196, 206),
    mk.HAIR: (62, 44, 34),
    mk.RIGHT_EYEBROW: (88, 62, 46),
    mk.LEFT_EYEBROW: (88, 62, 46),
    mk.RIGHT_EYE: (46, 44, 50),
    mk.LEFT_EYE: (46, 44, 50),
    mk.NOSE: (216, 180, 160),
    mk.UPPER_LIP: (202, 142, 136),
    mk.LOWER_LIP: (208, 148, 140),
    mk.MOUTH_CAVITY: (76, 34, 38),
    mk.SKIN: (224, 190, 170),
}

_MAKEUP_COLORS = {
    mk.BACKGROUND: (172, 176, 190),
    mk.HAIR: (40, 28, 26),
    mk.RIGHT_EYEBROW: (48, 30, 26),
    mk.LEFT_EYEBROW: (48, 30, 26),
    mk.RIGHT_EYE: (36, 32, 40),
    mk.LEFT_EYE: (36, 32, 40),
    mk.NOSE: (226, 168, 158),
    mk.UPPER_LIP: (168, 38, 70),
    mk.LOWER_LIP: (176, 44, 76),
    mk.MOUTH_CAVITY: (66, 26, 34),
    mk.SKIN: (234, 178, 172),
}


def face_image(
    labels: LabelMap, g: FaceGeometry, style: str, seed: int
) -> RasterImage:
    """Render an RGB face for a label map: flat class colors plus a smooth
    illumination gradient and seeded skin-texture noise."""
    colors = {"plain": _PLAIN_COLORS, "makeup": _MAKEUP_COLORS}[style]
    h, w = labels.height, labels.width
    img = np.zeros((h, w, 3), dtype=np.float64)
    for c, rgb in colors.items():
        img[labels.labels == c] = rgb

    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    # makeup reference carries stronger shading so illumination transfer
    # has something to move
    strength = 0.18 if style == "plain" else 0.30
    shade = 1.0 - strength * np.clip(
        (ys - (g.cy - g.half_h)) / (2 * g.half_h), 0.0, 1.0
    )
    shade -= 0.06 * np.abs(xs - g.cx) / g.half_w
    face = labels.labels != mk.BACKGROUND
    img[face] *= shade[face, None]

    rng = np.random.default_rng(seed)
    img += rng.normal(0.0, 2.5, size=img.shape)
    return RasterImage(np.clip(np.round(img), 0, 255).astype(np.uint8))


def make_fixture(
    width: int,
    height: int,
    style: str = "plain",
    seed: int = 0,
    geometry: FaceGeometry | None = None,
) -> tuple[RasterImage, LandmarkSet, LabelMap]:
    g = geometry or FaceGeometry.default(width, height)
    labels = face_labels(g, width, height)
    img = face_image(labels, g, style, seed)
    return img, face_landmarks(g), labels


def make_fixture_pair(width: int = 224, height: int = 224, seed: int = 0,
                      fringe: bool = False):
    """Input/reference fixture pair with slightly different face geometry."""
    g_in = FaceGeometry.default(width, height)
    g_ref = replace(
        g_in,
        cx=g_in.cx - width * 0.01,
        cy=g_in.cy + height * 0.01,
        half_w=g_in.half_w * 0.94,
        half_h=g_in.half_h * 0.96,
        fringe=fringe,
    )
    inp = make_fixture(width, height, "plain", seed, g_in)
    ref = make_fixture(width, height, "makeup", seed + 1, g_ref)
    return inp, ref


def write_fixture(directory, name: str, fixture) -> dict:
    """Write image/landmarks/labels files; returns their paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    img, lm, labels = fixture
    paths = {
        "image": directory / f"{name}.png",
        "landmarks": directory / f"{name}.landmarks.json",
        "labels": directory / f"{name}.labels.png",
    }
    save_image(img, paths["image"])
    save_landmarks(lm, paths["landmarks"])
    save_label_map(labels, paths["labels"])
    return paths
