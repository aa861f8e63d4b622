"""Gumbel-based categorical sampling of 4-QAM symbols.

Adding independent Gumbel(0,1) noise to logits and taking the argmax draws
exactly from categorical(softmax(logits)); the tempered softmax of the
same noisy logits is the smooth relaxation that converges to that one-hot
draw as the temperature drops.  Deviates come from the counter-based
generator, so draw ``index`` under a given seed is reproducible and both
samplers see identical noise.
"""

from __future__ import annotations

import math

import numpy as np

from . import rng

# The four symbols in category order, scaled to unit power.
_SYMBOLS = np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j]) / math.sqrt(2.0)

_CLAMP = 1e-15


def gumbel_deviates(seed: int, start: int, count: int = 1,
                    stream_id: int = rng.STREAM_GUMBEL) -> np.ndarray:
    """(count, 4) Gumbel(0,1) deviates for draws start..start+count."""
    u = rng.uniform_fields(seed, stream_id, start, count, 4)
    u = np.clip(u, _CLAMP, 1.0 - _CLAMP)
    return -np.log(-np.log(u))


def _check_logits(logits) -> np.ndarray:
    arr = np.asarray(logits, dtype=np.float64)
    if arr.shape != (4,):
        raise ValueError(f"expected 4 logits, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("logits must be finite")
    return arr


def gumbel_softmax_sample(logits, tau: float, seed: int, index: int,
                          stream_id: int = rng.STREAM_GUMBEL) -> np.ndarray:
    """Relaxed categorical sample: softmax((logits + g)/tau), g ~ Gumbel."""
    arr = _check_logits(logits)
    if not tau > 0:
        raise ValueError(f"temperature must be positive, got {tau!r}")
    z = (arr + gumbel_deviates(seed, index, 1, stream_id)[0]) / tau
    z -= z.max()
    e = np.exp(z)
    return e / e.sum()


def hard_sample(logits, seed: int, index: int,
                stream_id: int = rng.STREAM_GUMBEL) -> int:
    """Exact categorical draw via the Gumbel-max trick: argmax(logits + g)."""
    return int(hard_sample_batch(logits, seed, index, 1, stream_id)[0])


def hard_sample_batch(logits, seed: int, start: int, count: int,
                      stream_id: int = rng.STREAM_GUMBEL) -> np.ndarray:
    """Vectorized hard_sample over draw indices start..start+count."""
    arr = _check_logits(logits)
    g = gumbel_deviates(seed, start, count, stream_id)
    return np.argmax(arr + g, axis=1).astype(np.uint8)


def category_to_symbol(category):
    """Category {0,1,2,3} -> unit-power symbol of (1+1j, 1-1j, -1+1j, -1-1j)/sqrt(2)."""
    cat = np.asarray(category)
    if np.any((cat < 0) | (cat > 3)):
        raise ValueError("categories must be in {0, 1, 2, 3}")
    sym = _SYMBOLS[cat]
    return complex(sym) if np.isscalar(category) else sym
