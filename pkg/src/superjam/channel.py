"""Seeded AWGN wiretap channel.

Bob and Eve observe the same transmit sequence through independent noise
streams drawn from the counter-based generator: the noise added to sample
``i`` is a pure function of ``(seed, stream_id, i)``, so chunked or
parallel processing reproduces the serial output bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from . import rng
from .sep import sigma_from_snr


@dataclass(frozen=True)
class ChannelSpec:
    """One receiver's AWGN path: SNR plus the noise stream identity."""

    snr_db: float
    seed: int
    stream_id: int = rng.STREAM_BOB

    def __post_init__(self) -> None:
        if not math.isfinite(self.snr_db):
            raise ValueError(f"snr_db must be finite, got {self.snr_db!r}")


def awgn(seq, spec: ChannelSpec, start_index: int = 0) -> np.ndarray:
    """Add per-dimension N(0, sigma^2) noise to a complex sequence.

    ``start_index`` is the stream position of seq[0]; pass it when
    processing a longer sequence in chunks.  Gaussian deviates come from
    the inverse normal CDF on counter-indexed uniforms (see rng module),
    so the result does not depend on chunking.
    """
    seq = np.asarray(seq, dtype=np.complex128)
    if seq.size == 0:
        raise ValueError("sequence must be non-empty")
    sigma = sigma_from_snr(spec.snr_db)
    g = rng.gaussian_pairs(spec.seed, spec.stream_id, start_index, seq.size)
    noise = sigma * (g[:, 0] + 1j * g[:, 1])
    return seq + noise.reshape(seq.shape)
