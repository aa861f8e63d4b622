"""Kernel dependence statistic (normalized HSIC) and training-stage losses.

nHSIC with a linear kernel measures dependence between two sample sets on
a [0, 1] scale: 1 for linearly identical data, near 0 for independent
samples.  Gram matrices are centered by default; the raw uncentered ratio
is kept behind a flag for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_DEGENERATE_TRACE = 1e-12


def as_sample_matrix(values) -> np.ndarray:
    """Validate and shape data as an (n, d) float matrix of row samples."""
    x = np.asarray(values, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, np.newaxis]
    if x.ndim != 2:
        raise ValueError(f"expected a 2-D sample matrix, got shape {x.shape}")
    if x.shape[0] < 2:
        raise ValueError("need at least 2 samples")
    if not np.all(np.isfinite(x)):
        raise ValueError("sample matrix contains non-finite entries")
    return x


def load_sample_matrix(path) -> np.ndarray:
    """Read a headerless CSV of reals, one sample per row."""
    return as_sample_matrix(np.loadtxt(path, delimiter=",", ndmin=2))


def gram_linear(x) -> np.ndarray:
    """Linear-kernel Gram matrix: pairwise inner products of row samples."""
    m = as_sample_matrix(x)
    return m @ m.T


def _center(k: np.ndarray) -> np.ndarray:
    # H K H with H = I - J/n, expanded to row/column/grand mean subtraction
    return k - k.mean(axis=0, keepdims=True) - k.mean(axis=1, keepdims=True) + k.mean()


def nhsic(x, y, centered: bool = True) -> float:
    """Normalized HSIC: tr(Kx Ky) / sqrt(tr(Kx Kx) tr(Ky Ky)), linear kernel.

    With ``centered`` (default) both Gram matrices are double-centered
    first, which is what makes the statistic a dependence measure.
    Degenerate (constant) inputs return 0.
    """
    mx = as_sample_matrix(x)
    my = as_sample_matrix(y)
    if mx.shape[0] != my.shape[0]:
        raise ValueError(f"sample counts differ: {mx.shape[0]} vs {my.shape[0]}")
    kx = gram_linear(mx)
    ky = gram_linear(my)
    if centered:
        kx = _center(kx)
        ky = _center(ky)
    xx = float(np.sum(kx * kx))
    yy = float(np.sum(ky * ky))
    if xx < _DEGENERATE_TRACE or yy < _DEGENERATE_TRACE:
        return 0.0
    return float(np.sum(kx * ky)) / np.sqrt(xx * yy)


@dataclass(frozen=True)
class LossWeights:
    """Nonnegative weights of the secondary loss terms."""

    lambda1: float = 0.01
    lambda2: float = 1.0
    lambda3: float = 1.5

    def __post_init__(self) -> None:
        for name in ("lambda1", "lambda2", "lambda3"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


def loss_stage1(mse_bob: float, nhsic_val: float, w: LossWeights) -> float:
    """Reconstruction loss plus weighted message/jamming dependence penalty."""
    return mse_bob + w.lambda1 * nhsic_val


def loss_stage2(mse_eve: float) -> float:
    """Adversary fitting loss: the eavesdropper's reconstruction error alone."""
    return mse_eve


def loss_stage3(mse_bob: float, nhsic_val: float, mse_y2: float,
                mse_eve: float, w: LossWeights) -> float:
    """Joint loss rewarding Bob's quality and cancellation accuracy while
    penalizing the eavesdropper's quality; may be negative."""
    return (mse_bob + w.lambda1 * nhsic_val + w.lambda2 * mse_y2
            - w.lambda3 * mse_eve)
