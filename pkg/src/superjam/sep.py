"""Closed-form symbol error probabilities and power-allocation planning.

The legitimate receiver cancels the jamming component and sees plain 4-QAM
with per-axis offset d1; its SEP is 1 - Q(-d1/sigma)^2.  The eavesdropper
must decide the outer label on the 16-point superposition map; her SEP is
computed by summing exact Gaussian rectangle probabilities over the four
decision regions that share the transmitted outer bits.

``sigma`` is always the per-real-dimension noise standard deviation.  With
unit transmit power, sigma = 10**(-snr_db/20) per dimension; this is the
convention that reproduces the reference operating points (11.33% / 47.66%
at a = 0.49, 10 dB).
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
from scipy.special import erfc

from .constellation import PowerAllocation

_PLAN_GRID_STEP = 1e-4


class InfeasiblePlanError(ValueError):
    """Raised when no power allocation satisfies the requested constraints."""

    def __init__(self, message: str, binding_constraint: str):
        super().__init__(message)
        self.binding_constraint = binding_constraint


def q_function(x):
    """Standard normal upper-tail probability via the complementary error function."""
    q = 0.5 * erfc(np.asarray(x, dtype=np.float64) / math.sqrt(2.0))
    return float(q) if np.isscalar(x) else q


def sigma_from_snr(snr_db: float) -> float:
    """Per-dimension noise standard deviation for unit transmit power."""
    if not math.isfinite(snr_db):
        raise ValueError(f"snr_db must be finite, got {snr_db!r}")
    return 10.0 ** (-snr_db / 20.0)


def _check_sigma(sigma: float) -> None:
    if not (sigma > 0 and math.isfinite(sigma)):
        raise ValueError(f"sigma must be positive and finite, got {sigma!r}")


def _sep_leg(d1, sigma):
    return 1.0 - q_function(-np.asarray(d1) / sigma) ** 2


def sep_legitimate(pa: PowerAllocation, sigma: float) -> float:
    """SEP of the interference-cancelling receiver: 1 - Q(-d1/sigma)^2."""
    _check_sigma(sigma)
    return float(_sep_leg(pa.d1, sigma))


# Per-axis decision cells of the 16-point map: boundaries at -d2, 0, d2.
# Cell k holds the point with coordinate (-d2-d1, -d2+d1, d2-d1, d2+d1)[k];
# the outer-offset sign is negative in cells 0 and 2 (see constellation).
_CELL_OUTER_NEG = (True, False, True, False)


def _eve_scp_grid(d1, d2, sigma):
    """(4, ...) eavesdropper SCP per outer label, broadcasting over d1/d2.

    Conditioned on inner label 00 (the map is symmetric in the inner label):
    for each outer label, sums the exact rectangle probabilities of the four
    decision regions whose outer bits match, each a product of per-axis
    Gaussian interval probabilities.
    """
    d1 = np.asarray(d1, dtype=np.float64)
    d2 = np.asarray(d2, dtype=np.float64)
    edges = (None, -d2, np.zeros_like(d2), d2, None)  # None = unbounded side
    # Transmitted coordinate per axis given inner sign +: outer sign + puts
    # the point at d2+d1, outer sign - at d2-d1.
    coord = {False: d2 + d1, True: d2 - d1}

    def cell_prob(k, mean):
        lo, hi = edges[k], edges[k + 1]
        q_lo = q_function((lo - mean) / sigma) if lo is not None else 1.0
        q_hi = q_function((hi - mean) / sigma) if hi is not None else 0.0
        return q_lo - q_hi

    scp = np.zeros((4,) + d1.shape)
    for outer in range(4):
        re_neg = bool(outer & 1)
        im_neg = bool(outer & 2)
        tx, ty = coord[re_neg], coord[im_neg]
        for cx in range(4):
            if _CELL_OUTER_NEG[cx] != re_neg:
                continue
            px = cell_prob(cx, tx)
            for cy in range(4):
                if _CELL_OUTER_NEG[cy] != im_neg:
                    continue
                scp[outer] += px * cell_prob(cy, ty)
    return scp


def eve_scp(pa: PowerAllocation, sigma: float) -> dict[int, float]:
    """Eavesdropper symbol-correctness probability per transmitted outer label."""
    _check_sigma(sigma)
    scp = _eve_scp_grid(pa.d1, pa.d2, sigma)
    return {outer: float(scp[outer]) for outer in range(4)}


def sep_eavesdropper(pa: PowerAllocation, sigma: float) -> float:
    """SEP of the non-cancelling receiver when decoding the outer label."""
    scp = eve_scp(pa, sigma)
    return 1.0 - sum(scp.values()) / 4.0


def eve_scp_closed_form(pa: PowerAllocation, sigma: float) -> dict[int, float]:
    """Hand-expanded closed forms of the four eavesdropper SCPs.

    Each SCP is the sum of four per-region products of Q-differences,
    written out term by term; serves as an independent cross-check of the
    rectangle enumeration in :func:`eve_scp`.
    """
    _check_sigma(sigma)
    d1, d2 = pa.d1, pa.d2
    q = q_function
    s = sigma
    # Per-axis interval probabilities, transmitted coordinate d2+d1 (outer
    # sign matches inner) or d2-d1 (opposite):
    #   out_near: cell (d2, inf)    from d2+d1
    #   out_far:  cell (-d2, 0)     from d2+d1
    #   in_near:  cell (0, d2)      from d2-d1
    #   in_far:   cell (-inf, -d2)  from d2-d1
    out_near = q(-d1 / s)
    out_far = q(-(d1 + 2 * d2) / s) - q(-(d1 + d2) / s)
    in_near = q(-(d2 - d1) / s) - q(d1 / s)
    in_far = q((2 * d2 - d1) / s)
    return {
        0: out_near * out_near + out_far * out_near
           + out_near * out_far + out_far * out_far,
        1: in_near * out_near + in_far * out_near
           + in_near * out_far + in_far * out_far,
        2: out_near * in_near + out_near * in_far
           + out_far * in_near + out_far * in_far,
        3: in_near * in_near + in_near * in_far
           + in_far * in_near + in_far * in_far,
    }


def sep_eavesdropper_closed_form(pa: PowerAllocation, sigma: float) -> float:
    """Eavesdropper SEP from the hand-expanded SCP terms."""
    scp = eve_scp_closed_form(pa, sigma)
    return 1.0 - sum(scp.values()) / 4.0


@dataclass(frozen=True)
class SepPoint:
    """Analytic SEPs of both receivers at one (a, SNR) operating point."""

    a: float
    snr_db: float
    sep_leg: float
    sep_eve: float


@dataclass(frozen=True)
class SepCurve:
    """SEP-vs-a curve at fixed SNR, ordered by strictly increasing a."""

    snr_db: float
    points: tuple[SepPoint, ...]


def sweep_curve(snr_db: float, a_grid) -> SepCurve:
    """Evaluate both analytic SEPs over a strictly increasing grid of a values."""
    grid = [float(a) for a in a_grid]
    if any(not (0.0 < a < 0.5) for a in grid):
        raise ValueError("all grid values must lie in (0, 0.5)")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    sigma = sigma_from_snr(snr_db)
    points = []
    for a in grid:
        pa = PowerAllocation(a)
        points.append(SepPoint(a, snr_db, sep_legitimate(pa, sigma),
                               sep_eavesdropper(pa, sigma)))
    return SepCurve(snr_db, tuple(points))


def plan_pac(snr_db: float, min_eve_sep: float,
             max_leg_sep: float | None = None) -> PowerAllocation:
    """Pick the largest a meeting a security floor (and optional quality cap).

    Searches the grid {1e-4, 2e-4, ..., 0.4999} for the largest a with
    sep_eve(a) >= min_eve_sep and, when given, sep_leg(a) <= max_leg_sep.
    The largest feasible a maximizes legitimate performance because sep_leg
    decreases in a.
    """
    if not (0.0 <= min_eve_sep < 1.0):
        raise ValueError(f"min_eve_sep must be in [0, 1), got {min_eve_sep!r}")
    if max_leg_sep is not None and not (0.0 <= max_leg_sep <= 1.0):
        raise ValueError(f"max_leg_sep must be in [0, 1], got {max_leg_sep!r}")
    sigma = sigma_from_snr(snr_db)
    grid = np.arange(1, int(round(0.5 / _PLAN_GRID_STEP))) * _PLAN_GRID_STEP
    d1 = np.sqrt(grid / 2.0)
    d2 = np.sqrt((1.0 - grid) / 2.0)
    sep_eve = 1.0 - _eve_scp_grid(d1, d2, sigma).mean(axis=0)
    sep_leg = _sep_leg(d1, sigma)
    eve_ok = sep_eve >= min_eve_sep
    leg_ok = sep_leg <= max_leg_sep if max_leg_sep is not None \
        else np.ones(grid.size, dtype=bool)
    feasible = eve_ok & leg_ok
    if not feasible.any():
        if not eve_ok.any():
            raise InfeasiblePlanError(
                f"no a in (0, 0.5) reaches eavesdropper SEP >= {min_eve_sep}",
                "min_eve_sep")
        if not leg_ok.any():
            raise InfeasiblePlanError(
                f"no a in (0, 0.5) keeps legitimate SEP <= {max_leg_sep}",
                "max_leg_sep")
        raise InfeasiblePlanError(
            f"eavesdropper SEP >= {min_eve_sep} and legitimate SEP <= "
            f"{max_leg_sep} cannot hold simultaneously", "min_eve_sep")
    return PowerAllocation(float(grid[np.flatnonzero(feasible)[-1]]))
