"""Image-quality and error-rate metrics: MSE, PSNR, empirical SEP."""

from __future__ import annotations

import math

import numpy as np

# Peak pixel value for byte images (both RGB and grayscale, for
# comparability across channel counts).
PIXEL_MAX = 255.0


def mse(a, b) -> float:
    """Mean squared byte difference between two equally shaped images."""
    pa = _pixels(a)
    pb = _pixels(b)
    if pa.shape != pb.shape:
        raise ValueError(f"shape mismatch: {pa.shape} vs {pb.shape}")
    diff = pa.astype(np.float64) - pb.astype(np.float64)
    return float(np.mean(diff * diff))


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in dB; +inf when the images are identical."""
    err = mse(a, b)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(PIXEL_MAX * PIXEL_MAX / err)


def empirical_sep(sent, detected) -> float:
    """Fraction of positions where the detected label differs from the sent one."""
    s = np.asarray(sent)
    d = np.asarray(detected)
    if s.shape != d.shape:
        raise ValueError(f"length mismatch: {s.shape} vs {d.shape}")
    if s.size == 0:
        raise ValueError("label sequences must be non-empty")
    return float(np.count_nonzero(s != d)) / s.size


def _pixels(img) -> np.ndarray:
    """Accept an Image (duck-typed via .to_array) or a plain array."""
    if hasattr(img, "to_array"):
        return img.to_array()
    return np.asarray(img)
