"""Image containers and sRGB <-> CIELAB conversion.

All rasters are row-major with the origin at the top-left corner.  Lab
values are kept as floating point throughout the pipeline; quantization
to 8 bits happens only when an image is encoded.  The conversion uses
the D65 white point with the standard 2-degree observer, matching
sRGB's native white.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# sRGB (D65) linear RGB -> XYZ, IEC 61966-2-1
_RGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_XYZ_TO_RGB = np.linalg.inv(_RGB_TO_XYZ)

# D65 reference white
_WHITE = np.array([0.95047, 1.0, 1.08883])

_DELTA = 6.0 / 29.0


class ImageShapeError(ValueError):
    """Raised when image/field dimensions do not satisfy a contract."""


@dataclass(frozen=True)
class RasterImage:
    """8-bit sRGB raster, pixels shaped (height, width, 3), dtype uint8."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 3 or px.shape[2] != 3:
            raise ImageShapeError(f"expected (H, W, 3) pixel array, got {px.shape}")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ImageShapeError("image must be at least 1x1")
        if px.dtype != np.uint8:
            raise ImageShapeError(f"expected uint8 pixels, got {px.dtype}")
        px = np.ascontiguousarray(px)
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


@dataclass(frozen=True)
class LabImage:
    """Floating-point CIELAB raster; L in [0, 100] after any clamping op."""

    L: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        fields = {}
        shape = None
        for name in ("L", "a", "b"):
            f = np.asarray(getattr(self, name), dtype=np.float64)
            if f.ndim != 2:
                raise ImageShapeError(f"channel {name} must be 2-D, got shape {f.shape}")
            if shape is None:
                shape = f.shape
            elif f.shape != shape:
                raise ImageShapeError(
                    f"channel {name} shape {f.shape} differs from {shape}"
                )
            if not np.all(np.isfinite(f)):
                raise ImageShapeError(f"channel {name} contains non-finite values")
            f = np.ascontiguousarray(f)
            f.flags.writeable = False
            fields[name] = f
        for name, f in fields.items():
            object.__setattr__(self, name, f)

    @property
    def height(self) -> int:
        return self.L.shape[0]

    @property
    def width(self) -> int:
        return self.L.shape[1]


# A scalar field is a 2-D float64 array (height, width); carriers for
# L, structure, detail and mask weights all use this representation.
ScalarField = np.ndarray


def as_scalar_field(values) -> ScalarField:
    """Validate and return a finite 2-D float64 field."""
    f = np.asarray(values, dtype=np.float64)
    if f.ndim != 2:
        raise ImageShapeError(f"scalar field must be 2-D, got shape {f.shape}")
    if not np.all(np.isfinite(f)):
        raise ImageShapeError("scalar field contains non-finite values")
    return f


def _srgb_to_linear(c: np.ndarray) -> np.ndarray:
    return np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)


def _linear_to_srgb(c: np.ndarray) -> np.ndarray:
    c = np.clip(c, 0.0, 1.0)
    return np.where(c <= 0.0031308, 12.92 * c, 1.055 * c ** (1.0 / 2.4) - 0.055)


def _lab_f(t: np.ndarray) -> np.ndarray:
    return np.where(t > _DELTA**3, np.cbrt(t), t / (3 * _DELTA**2) + 4.0 / 29.0)


def _lab_f_inv(t: np.ndarray) -> np.ndarray:
    return np.where(t > _DELTA, t**3, 3 * _DELTA**2 * (t - 4.0 / 29.0))


def rgb_to_lab(img: RasterImage) -> LabImage:
    """Convert an 8-bit sRGB raster to CIELAB (D65, 2-degree observer)."""
    rgb = img.pixels.astype(np.float64) / 255.0
    linear = _srgb_to_linear(rgb)
    xyz = linear @ _RGB_TO_XYZ.T
    f = _lab_f(xyz / _WHITE)
    L = 116.0 * f[..., 1] - 16.0
    a = 500.0 * (f[..., 0] - f[..., 1])
    b = 200.0 * (f[..., 1] - f[..., 2])
    return LabImage(L=np.clip(L, 0.0, 100.0), a=a, b=b)


def lab_to_rgb(img: LabImage) -> RasterImage:
    """Inverse conversion; out-of-gamut values clamp per channel to [0, 255]."""
    fy = (img.L + 16.0) / 116.0
    fx = fy + img.a / 500.0
    fz = fy - img.b / 200.0
    xyz = np.stack([_lab_f_inv(fx), _lab_f_inv(fy), _lab_f_inv(fz)], axis=-1) * _WHITE
    linear = xyz @ _XYZ_TO_RGB.T
    srgb = _linear_to_srgb(linear)
    return RasterImage(np.clip(np.round(srgb * 255.0), 0, 255).astype(np.uint8))


def load_image(path) -> RasterImage:
    """Read an 8-bit RGB(A) image file; alpha, if present, is dropped."""
    from PIL import Image

    with Image.open(path) as im:
        rgb = im.convert("RGB")
        return RasterImage(np.asarray(rgb, dtype=np.uint8))


def save_image(img: RasterImage, path) -> None:
    """Write an 8-bit RGB image file (opaque)."""
    from PIL import Image

    Image.fromarray(img.pixels, mode="RGB").save(path)


def split_luminance(img: LabImage) -> tuple[ScalarField, ScalarField, ScalarField]:
    """Extract the L, a, b fields; merge_lab is the exact inverse."""
    return img.L.copy(), img.a.copy(), img.b.copy()


def merge_lab(L: ScalarField, a: ScalarField, b: ScalarField) -> LabImage:
    """Assemble a LabImage from three same-shaped fields, adopted verbatim."""
    L, a, b = as_scalar_field(L), as_scalar_field(a), as_scalar_field(b)
    if not (L.shape == a.shape == b.shape):
        raise ImageShapeError(
            f"field shapes differ: L {L.shape}, a {a.shape}, b {b.shape}"
        )
    return LabImage(L=L, a=a, b=b)
