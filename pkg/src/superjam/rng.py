"""Counter-based random number generation (Philox4x64-10).

Every random quantity in this package is a pure function of
``(seed, stream_id, index)``: the generator is stateless, so a sequence can
be produced in chunks, in any order, on any number of workers, and the
result is bit-identical to a serial run.

Layout: one Philox block is keyed by ``key = (seed, _DOMAIN)`` with counter
``(block_index, stream_id, 0, 0)`` and yields four 64-bit words.  Word ``w``
of a stream lives in block ``w // 4``, slot ``w % 4``.  Gaussian deviates
use the inverse normal CDF on 53-bit uniforms (fixed single-word
consumption per deviate, unlike rejection samplers), which is what keeps
the per-index purity.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

_DOMAIN = 0x73757065726A616D  # b"superjam" as big-endian uint64

# Philox4x64 round constants (Random123).
_M0 = np.uint64(0xD2E7470EE14C6C93)
_M1 = np.uint64(0xCA5A826395121157)
_ROUNDS = 10

_U32 = np.uint64(0xFFFFFFFF)
_SH32 = np.uint64(32)

# Stream ids reserved by this package.  Bob/Eve channel noise defaults to
# streams 1 and 2 under one master seed.
STREAM_BOB = 1
STREAM_EVE = 2
STREAM_GUMBEL = 3
STREAM_INDEX_PICK = 4
STREAM_REGEN_FLIP = 5
STREAM_OUTER_LABELS = 6
STREAM_INNER_LABELS = 7
STREAM_SEED_DERIVE = 8

_MASK64 = (1 << 64) - 1


def _mulhilo(a: np.uint64, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """128-bit product of scalar a and vector x, as (high, low) 64-bit halves."""
    lo = a * x  # wraps mod 2**64
    a_lo, a_hi = a & _U32, a >> _SH32
    x_lo, x_hi = x & _U32, x >> _SH32
    albl = a_lo * x_lo
    albh = a_lo * x_hi
    ahbl = a_hi * x_lo
    cross = (albl >> _SH32) + (ahbl & _U32) + (albh & _U32)
    hi = a_hi * x_hi + (ahbl >> _SH32) + (albh >> _SH32) + (cross >> _SH32)
    return hi, lo


def _philox_blocks(block_index: np.ndarray, seed: int, stream_id: int) -> np.ndarray:
    """Philox4x64-10 keystream blocks: (n,) uint64 indices -> (n, 4) uint64 words."""
    c0 = block_index.astype(np.uint64)
    n = c0.shape[0]
    c1 = np.full(n, np.uint64(stream_id & _MASK64), dtype=np.uint64)
    c2 = np.zeros(n, dtype=np.uint64)
    c3 = np.zeros(n, dtype=np.uint64)
    # Key schedule in Python ints: numpy scalars warn on wrap-around.
    k0, k1 = seed & _MASK64, _DOMAIN
    for r in range(_ROUNDS):
        if r > 0:
            k0 = (k0 + 0x9E3779B97F4A7C15) & _MASK64
            k1 = (k1 + 0xBB67AE8584CAA73B) & _MASK64
        hi0, lo0 = _mulhilo(_M0, c0)
        hi1, lo1 = _mulhilo(_M1, c2)
        c0, c1, c2, c3 = hi1 ^ c1 ^ np.uint64(k0), lo1, hi0 ^ c3 ^ np.uint64(k1), lo0
    return np.stack([c0, c1, c2, c3], axis=1)


def raw_words(seed: int, stream_id: int, start: int, count: int) -> np.ndarray:
    """Words ``start .. start+count`` of the (seed, stream_id) keystream."""
    if count <= 0:
        return np.empty(0, dtype=np.uint64)
    first_block = start // 4
    last_block = (start + count - 1) // 4
    idx = np.arange(first_block, last_block + 1, dtype=np.uint64)
    words = _philox_blocks(idx, seed, stream_id).reshape(-1)
    offset = start - first_block * 4
    return words[offset : offset + count]


def uniforms(seed: int, stream_id: int, start: int, count: int) -> np.ndarray:
    """float64 uniforms in the open interval (0, 1), one word each."""
    w = raw_words(seed, stream_id, start, count)
    return (w >> np.uint64(11)).astype(np.float64) * 2.0**-53 + 2.0**-54


def gaussian_pairs(seed: int, stream_id: int, start: int, count: int) -> np.ndarray:
    """(count, 2) standard normal deviates for sample indices start..start+count.

    Sample index i consumes exactly words 2i and 2i+1; deviates come from
    the inverse normal CDF, so the draw for index i never depends on
    neighbouring indices.
    """
    u = uniforms(seed, stream_id, 2 * start, 2 * count)
    return ndtri(u).reshape(count, 2)


def uniform_fields(seed: int, stream_id: int, start: int, count: int,
                   fields: int) -> np.ndarray:
    """(count, fields) uniforms; index i owns words i*fields .. i*fields+fields-1."""
    u = uniforms(seed, stream_id, start * fields, count * fields)
    return u.reshape(count, fields)


def random_labels(seed: int, stream_id: int, start: int, count: int) -> np.ndarray:
    """Uniform 2-bit labels in {0,1,2,3} (top two bits of each word)."""
    w = raw_words(seed, stream_id, start, count)
    return (w >> np.uint64(62)).astype(np.uint8)


def _philox_block_py(block_index: int, seed: int, stream_id: int) -> list[int]:
    """Scalar Philox block in Python ints; bit-identical to _philox_blocks."""
    c0, c1, c2, c3 = block_index & _MASK64, stream_id & _MASK64, 0, 0
    k0, k1 = seed & _MASK64, _DOMAIN
    for r in range(_ROUNDS):
        if r > 0:
            k0 = (k0 + 0x9E3779B97F4A7C15) & _MASK64
            k1 = (k1 + 0xBB67AE8584CAA73B) & _MASK64
        p0 = 0xD2E7470EE14C6C93 * c0
        p1 = 0xCA5A826395121157 * c2
        c0, c1, c2, c3 = (p1 >> 64) ^ c1 ^ k0, p1 & _MASK64, \
            (p0 >> 64) ^ c3 ^ k1, p0 & _MASK64
    return [c0, c1, c2, c3]


def raw_word(seed: int, stream_id: int, index: int) -> int:
    """Single keystream word without array overhead (scalar hot path)."""
    return _philox_block_py(index // 4, seed, stream_id)[index % 4]


def random_index(seed: int, stream_id: int, index: int, n: int) -> int:
    """Uniform integer in [0, n) for draw ``index``, deterministic in all args."""
    if n <= 0:
        raise ValueError("n must be positive")
    u = (raw_word(seed, stream_id, index) >> 11) * 2.0**-53 + 2.0**-54
    return min(int(u * n), n - 1)


def derive_seed(master_seed: int, index: int) -> int:
    """A 64-bit sub-seed for unit ``index`` (e.g. one frame of a campaign)."""
    return raw_word(master_seed, STREAM_SEED_DERIVE, index)
