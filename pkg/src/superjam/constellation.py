"""4-QAM geometry, superposition map, ML detection, interference cancellation.

Labels are 2-bit integers in {0,1,2,3}.  The fixed quadrant table is

    0 (00) -> (+,+)    1 (01) -> (-,+)    2 (10) -> (+,-)    3 (11) -> (-,-)

i.e. the low bit selects the real-axis sign and the high bit the
imaginary-axis sign (0 = positive).  Constellation points are unit power:
(+-1 +- 1j)/sqrt(2).

A composite 16-point label packs the inner (jamming) label in the high two
bits and the outer (message) label in the low two bits, so its 4-bit string
reads inner bits first, e.g. 0b0010 = inner 00, outer 10.

All functions accept scalars or numpy arrays and vectorize elementwise;
scalar in, scalar out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class PowerAllocation:
    """Power split between outer (message) and inner (jamming) codes.

    ``a`` is the fraction of transmit power carried by the outer code and
    must lie in the open interval (0, 0.5), so the jamming component is
    always the stronger one.  ``d1 = sqrt(a/2)`` and ``d2 = sqrt((1-a)/2)``
    are the per-axis offsets of the outer and inner sub-constellations;
    ``d2 > d1`` holds for every valid ``a``.
    """

    a: float
    d1: float = field(init=False)
    d2: float = field(init=False)

    def __post_init__(self) -> None:
        a = self.a
        if not (isinstance(a, (int, float)) and math.isfinite(a) and 0.0 < a < 0.5):
            raise ValueError(f"power allocation coefficient must be in (0, 0.5), got {a!r}")
        object.__setattr__(self, "a", float(a))
        object.__setattr__(self, "d1", math.sqrt(a / 2.0))
        object.__setattr__(self, "d2", math.sqrt((1.0 - a) / 2.0))


def outer_point(label):
    """Map 2-bit labels to unit-power 4-QAM points (+-1 +- 1j)/sqrt(2)."""
    lab = np.asarray(label)
    if np.any((lab < 0) | (lab > 3)):
        raise ValueError("labels must be in {0, 1, 2, 3}")
    re = np.where(lab & 1, -_INV_SQRT2, _INV_SQRT2)
    im = np.where(lab & 2, -_INV_SQRT2, _INV_SQRT2)
    pt = re + 1j * im
    return complex(pt) if np.isscalar(label) else pt


def superpose(y1, y2, pa: PowerAllocation):
    """Combine outer and inner samples: sqrt(a)*y1 + sqrt(1-a)*y2."""
    return math.sqrt(pa.a) * y1 + math.sqrt(1.0 - pa.a) * y2


def pack_super(inner, outer):
    """Pack inner and outer 2-bit labels into a 4-bit composite label."""
    return (inner << 2) | outer


def split_super(label):
    """Split a composite label into (inner, outer) 2-bit labels."""
    return label >> 2, label & 3


def super_point(label, pa: PowerAllocation):
    """Map 4-bit composite labels to points of the 16-point superposition map.

    The inner label places the strong component at (+-d2, +-d2); the outer
    label offsets it by (+-d1, +-d1).  Coordinates therefore lie on the grid
    {+-d2 +- d1} per axis.
    """
    lab = np.asarray(label)
    inner, outer = split_super(lab)
    pt = math.sqrt(1.0 - pa.a) * outer_point(inner) + math.sqrt(pa.a) * outer_point(outer)
    return complex(pt) if np.isscalar(label) else pt


def ml_detect_outer(sample):
    """Quadrant ML decision for the 4-QAM outer map.

    Boundary samples (a coordinate exactly 0) resolve toward the positive
    side.
    """
    s = np.asarray(sample)
    lab = (s.real < 0).astype(np.uint8) | ((s.imag < 0).astype(np.uint8) << 1)
    return int(lab) if np.isscalar(sample) else lab


def _cell_index(coord: np.ndarray, d2: float) -> np.ndarray:
    """Per-axis decision cell: 0:(-inf,-d2) 1:[-d2,0) 2:[0,d2) 3:[d2,inf)."""
    return (coord >= -d2).astype(np.uint8) + (coord >= 0).astype(np.uint8) \
        + (coord >= d2).astype(np.uint8)


# Cell -> sign bits for one axis.  Cell k holds the point with coordinate
# (-d2-d1, -d2+d1, d2-d1, d2+d1)[k]; bit 1 means negative.  The inner
# component is negative in cells 0,1 and the outer offset in cells 0,2.
_CELL_INNER_NEG = np.array([1, 1, 0, 0], dtype=np.uint8)
_CELL_OUTER_NEG = np.array([1, 0, 1, 0], dtype=np.uint8)


def ml_detect_super(sample, pa: PowerAllocation):
    """Nearest-point ML decision on the 16-point superposition map.

    Implemented as the equivalent axis-aligned rectangle rule with
    boundaries {-d2, 0, d2} per axis; boundary samples resolve toward the
    positive side.
    """
    s = np.asarray(sample)
    cx = _cell_index(s.real, pa.d2)
    cy = _cell_index(s.imag, pa.d2)
    inner = _CELL_INNER_NEG[cx] | (_CELL_INNER_NEG[cy] << 1)
    outer = _CELL_OUTER_NEG[cx] | (_CELL_OUTER_NEG[cy] << 1)
    lab = (inner << 2) | outer
    return int(lab) if np.isscalar(sample) else lab


def eve_detect_outer(sample, pa: PowerAllocation):
    """Outer-label decision without interference cancellation.

    The eavesdropper runs the full 16-point ML detector and keeps only the
    outer bits.
    """
    return ml_detect_super(sample, pa) & 3


def cancel_interference(s1, y2_hat, pa: PowerAllocation):
    """Remove the known jamming component: (s1 - sqrt(1-a)*y2_hat)/sqrt(a).

    Exact when y2_hat equals the transmitted inner sequence; residual noise
    is amplified by 1/sqrt(a).
    """
    return (s1 - math.sqrt(1.0 - pa.a) * y2_hat) / math.sqrt(pa.a)


def all_super_points(pa: PowerAllocation) -> np.ndarray:
    """The 16 superposition points, indexed by composite label."""
    return super_point(np.arange(16), pa)
