"""Facial-component label maps, region classification, soft masks and
probability-weighted fusion for the air-bangs case.

Label table (8-bit single-channel image, pixel value = class index):

    0 background   1 hair          2 left eyebrow   3 right eyebrow
    4 left eye     5 right eye     6 nose           7 upper lip
    8 lower lip    9 mouth cavity  10 skin

Skin-like classes (skin, lips, eyebrows, nose) receive the transfer;
eyes and mouth cavity are preserved from the input; hair and background
are not considered.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np
from scipy.ndimage import gaussian_filter

from .imgcore import ImageShapeError, RasterImage

NUM_CLASSES = 11

CLASS_NAMES = (
    "background",
    "hair",
    "left_eyebrow",
    "right_eyebrow",
    "left_eye",
    "right_eye",
    "nose",
    "upper_lip",
    "lower_lip",
    "mouth_cavity",
    "skin",
)

BACKGROUND, HAIR = 0, 1
LEFT_EYEBROW, RIGHT_EYEBROW = 2, 3
LEFT_EYE, RIGHT_EYE = 4, 5
NOSE, UPPER_LIP, LOWER_LIP, MOUTH_CAVITY, SKIN = 6, 7, 8, 9, 10


class Region(IntEnum):
    C1 = 0  # skin-like: receives color/detail/illumination transfer
    C2 = 1  # eyes and mouth cavity: preserved from the input
    IGNORE = 2  # hair and background: not considered


_REGION_OF_CLASS = np.array(
    [
        Region.IGNORE,  # background
        Region.IGNORE,  # hair
        Region.C1,  # left eyebrow
        Region.C1,  # right eyebrow
        Region.C2,  # left eye
        Region.C2,  # right eye
        Region.C1,  # nose
        Region.C1,  # upper lip
        Region.C1,  # lower lip
        Region.C2,  # mouth cavity
        Region.C1,  # skin
    ],
    dtype=np.uint8,
)


class LabelMapError(ValueError):
    """Base class for label-map ingestion failures."""


class UndefinedLabelError(LabelMapError):
    """A pixel holds a value outside the class table."""


class LabelSizeError(LabelMapError):
    """Label map dimensions differ from the expected image size."""


@dataclass(frozen=True)
class LabelMap:
    """Per-pixel class indices in 0..10, shaped (height, width)."""

    labels: np.ndarray

    def __post_init__(self):
        lab = np.asarray(self.labels)
        if lab.ndim != 2:
            raise LabelMapError(f"label map must be 2-D, got shape {lab.shape}")
        if lab.size and lab.max() >= NUM_CLASSES:
            raise UndefinedLabelError(
                f"label value {int(lab.max())} outside 0..{NUM_CLASSES - 1}"
            )
        lab = np.ascontiguousarray(lab.astype(np.uint8))
        lab.flags.writeable = False
        object.__setattr__(self, "labels", lab)

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def width(self) -> int:
        return self.labels.shape[1]


@dataclass(frozen=True)
class SoftMask:
    """Per-class probability fields, shaped (height, width, 11); per-pixel
    probabilities sum to 1."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        if p.ndim != 3 or p.shape[2] != NUM_CLASSES:
            raise ImageShapeError(
                f"soft mask must be (H, W, {NUM_CLASSES}), got {p.shape}"
            )
        object.__setattr__(self, "probs", p)


@dataclass(frozen=True)
class RetentionPolicy:
    """Class sets retained from the input vs the initial makeup result.

    The sets must be disjoint and jointly cover all 11 classes.
    """

    input_classes: frozenset[int]
    makeup_classes: frozenset[int]

    def __post_init__(self):
        inp = frozenset(self.input_classes)
        mk = frozenset(self.makeup_classes)
        if inp & mk:
            raise ValueError(f"retention sets overlap: {sorted(inp & mk)}")
        if inp | mk != set(range(NUM_CLASSES)):
            raise ValueError("retention sets must cover all classes")
        object.__setattr__(self, "input_classes", inp)
        object.__setattr__(self, "makeup_classes", mk)


# Air-bangs retention: input keeps eyes, mouth cavity, hair and background;
# the initial makeup keeps skin, eyebrows, nose and lips.
DEFAULT_RETENTION = RetentionPolicy(
    input_classes=frozenset({BACKGROUND, HAIR, LEFT_EYE, RIGHT_EYE, MOUTH_CAVITY}),
    makeup_classes=frozenset(
        {LEFT_EYEBROW, RIGHT_EYEBROW, NOSE, UPPER_LIP, LOWER_LIP, SKIN}
    ),
)


def load_label_map(path, expected_size: tuple[int, int]) -> LabelMap:
    """Read an 8-bit single-channel label image and validate it."""
    from PIL import Image

    with Image.open(path) as im:
        arr = np.asarray(im.convert("L"), dtype=np.uint8)
    w, h = expected_size
    if arr.shape != (h, w):
        raise LabelSizeError(
            f"{path}: label map is {arr.shape[1]}x{arr.shape[0]}, expected {w}x{h}"
        )
    return LabelMap(arr)


def save_label_map(labels: LabelMap, path) -> None:
    from PIL import Image

    Image.fromarray(labels.labels, mode="L").save(path)


def classify_regions(labels: LabelMap) -> np.ndarray:
    """Per-pixel region class (Region values) by table lookup."""
    return _REGION_OF_CLASS[labels.labels]


def soften(labels: LabelMap, sigma: float) -> SoftMask:
    """Convert a hard label map into per-class probability fields.

    One-hot encodes each class, blurs each channel with a Gaussian of the
    given sigma (replicate borders) and renormalizes per pixel to sum 1.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    h, w = labels.labels.shape
    probs = np.empty((h, w, NUM_CLASSES), dtype=np.float64)
    for c in range(NUM_CLASSES):
        onehot = (labels.labels == c).astype(np.float64)
        probs[..., c] = gaussian_filter(onehot, sigma=sigma, mode="nearest")
    probs /= probs.sum(axis=2, keepdims=True)
    return SoftMask(probs)


def hard_soft_mask(labels: LabelMap) -> SoftMask:
    """One-hot soft mask (no blurring); used when air-bangs mode is off."""
    h, w = labels.labels.shape
    probs = np.zeros((h, w, NUM_CLASSES), dtype=np.float64)
    ys, xs = np.mgrid[0:h, 0:w]
    probs[ys, xs, labels.labels] = 1.0
    return SoftMask(probs)


def fuse(
    input_img: RasterImage,
    makeup_img: RasterImage,
    soft: SoftMask,
    policy: RetentionPolicy = DEFAULT_RETENTION,
) -> RasterImage:
    """Probability-weighted blend of input and initial-makeup pixels.

    w_in sums the probabilities of the input-retained classes; the
    makeup classes hold the complement, so the output is a per-pixel
    convex combination rounded to 8 bits.
    """
    if input_img.pixels.shape != makeup_img.pixels.shape:
        raise ImageShapeError("input and makeup image shapes differ")
    if soft.probs.shape[:2] != input_img.pixels.shape[:2]:
        raise ImageShapeError("soft mask shape differs from images")
    w_in = soft.probs[..., sorted(policy.input_classes)].sum(axis=2)
    w_mk = 1.0 - w_in
    blended = (
        w_in[..., None] * input_img.pixels.astype(np.float64)
        + w_mk[..., None] * makeup_img.pixels.astype(np.float64)
    )
    return RasterImage(np.clip(np.round(blended), 0, 255).astype(np.uint8))
