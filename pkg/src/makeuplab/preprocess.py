"""Optional input-image beautification: three-band color balance
(whitening) and bilateral smoothing in CIELAB."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imgcore import ImageShapeError, LabImage, RasterImage

Offsets = tuple[float, float, float]


def _check_offsets(name: str, offs: Offsets) -> None:
    if len(offs) != 3 or any(not (-1.0 <= o <= 1.0) for o in offs):
        raise ValueError(f"{name} offsets must be three values in [-1, 1], got {offs}")


@dataclass(frozen=True)
class ColorBalanceParams:
    """Signed (r, g, b) offsets per luminance band, in [-1, 1] of full scale."""

    shadows: Offsets = (0.0, 0.0, 0.0)
    midtones: Offsets = (0.0, 0.0, 0.0)
    highlights: Offsets = (0.0, 0.0, 0.0)

    def __post_init__(self):
        _check_offsets("shadows", self.shadows)
        _check_offsets("midtones", self.midtones)
        _check_offsets("highlights", self.highlights)


# Mild warm whitening, midtones only; overridable via config.
DEFAULT_WHITENING = ColorBalanceParams(midtones=(0.04, 0.03, 0.02))


@dataclass(frozen=True)
class BilateralParams:
    sigma_spatial: float = 4.0
    sigma_range: float = 8.0
    kernel_radius: int = 8

    def __post_init__(self):
        if self.sigma_spatial <= 0 or self.sigma_range <= 0:
            raise ValueError("bilateral sigmas must be positive")
        if self.kernel_radius < 1:
            raise ValueError("kernel_radius must be >= 1")
        if self.kernel_radius < math.ceil(2 * self.sigma_spatial):
            raise ValueError(
                f"kernel_radius {self.kernel_radius} < ceil(2 * sigma_spatial) "
                f"= {math.ceil(2 * self.sigma_spatial)}"
            )


def band_weights(luminance: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Triangular shadow/midtone/highlight weights on the [0, 100] axis.

    Centers at 0, 50 and 100 with linear interpolation; the three weights
    sum to 1 at every luminance.
    """
    t = np.clip(np.asarray(luminance, dtype=np.float64), 0.0, 100.0)
    shadows = np.clip(1.0 - t / 50.0, 0.0, 1.0)
    midtones = np.clip(1.0 - np.abs(t - 50.0) / 50.0, 0.0, 1.0)
    highlights = np.clip((t - 50.0) / 50.0, 0.0, 1.0)
    return shadows, midtones, highlights


def color_balance(img: RasterImage, params: ColorBalanceParams) -> RasterImage:
    """Per-pixel channel offsets blended by luminance band weights."""
    rgb = img.pixels.astype(np.float64)
    # Rec. 601 luma, rescaled to the [0, 100] band axis
    luma = (0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]) / 2.55
    ws, wm, wh = band_weights(luma)
    sh = np.asarray(params.shadows)
    mid = np.asarray(params.midtones)
    hi = np.asarray(params.highlights)
    offset = (
        ws[..., None] * sh[None, None, :]
        + wm[..., None] * mid[None, None, :]
        + wh[..., None] * hi[None, None, :]
    ) * 255.0
    out = np.clip(np.round(rgb + offset), 0, 255).astype(np.uint8)
    return RasterImage(out)


def bilateral_filter(
    img: LabImage, params: BilateralParams, mask: np.ndarray | None = None
) -> LabImage:
    """Classic bilateral filter on all three Lab channels.

    Weights are a spatial Gaussian times a range Gaussian on the Euclidean
    CIELAB color distance; borders are handled by clamping coordinates.
    When ``mask`` is given, only pixels where it is True are replaced.
    """
    h, w = img.height, img.width
    r = params.kernel_radius
    stacked = np.stack([img.L, img.a, img.b], axis=-1)
    padded = np.pad(stacked, ((r, r), (r, r), (0, 0)), mode="edge")

    inv2ss = 1.0 / (2.0 * params.sigma_spatial**2)
    inv2sr = 1.0 / (2.0 * params.sigma_range**2)

    num = np.zeros_like(stacked)
    den = np.zeros((h, w), dtype=np.float64)
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            shifted = padded[r + dy : r + dy + h, r + dx : r + dx + w, :]
            dist2 = np.sum((shifted - stacked) ** 2, axis=-1)
            wgt = np.exp(-(dx * dx + dy * dy) * inv2ss - dist2 * inv2sr)
            num += wgt[..., None] * shifted
            den += wgt
    out = num / den[..., None]

    if mask is not None:
        if mask.shape != (h, w):
            raise ImageShapeError(f"mask shape {mask.shape} != image {(h, w)}")
        out = np.where(mask[..., None], out, stacked)
    return LabImage(L=out[..., 0], a=out[..., 1], b=out[..., 2])
