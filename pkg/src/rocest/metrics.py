"""Distances between monotone curves and CDF-distance bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import DiscreteDistribution, DomainError, INF, MonotoneCurve

#: Bisection tolerance for the Levy distance.
LEVY_TOL = 1e-9


@dataclass(frozen=True)
class LevyBandCheck:
    """Feasibility of the diagonal epsilon-band condition at one epsilon."""

    epsilon: float
    feasible: bool
    witness: Optional[tuple[float, float]] = None


class _Envelope:
    """Upper and lower piecewise-linear envelopes of a completed graph.

    Vertical segments make the curve multivalued in p; the envelopes give
    the top and bottom values.  Outside [0, 1] the conventions value 0 for
    p < 0 and 1 for p > 1 apply.
    """

    def __init__(self, curve: MonotoneCurve):
        p = np.array(curve.p)
        q = np.array(curve.q)
        self.p, self.q = p, q
        # np.interp on duplicated x returns the last y at the duplicate and
        # interpolates toward the first y from the left, which is exactly
        # the upper envelope; reversing and negating gives the lower one.
        self.p_rev, self.q_rev = -p[::-1], -q[::-1]

    def upper(self, x: np.ndarray) -> np.ndarray:
        y = np.interp(x, self.p, self.q)
        return np.where(x < 0.0, 0.0, np.where(x > 1.0, 1.0, y))

    def lower(self, x: np.ndarray) -> np.ndarray:
        y = -np.interp(-x, self.p_rev, self.q_rev)
        return np.where(x < 0.0, 0.0, np.where(x > 1.0, 1.0, y))


def _band_violation(
    inner: _Envelope, outer: _Envelope, eps: float
) -> tuple[float, Optional[tuple[float, float]]]:
    """Largest violation of "inner's graph inside outer's epsilon-band".

    The gap functions are piecewise linear between the vertices of the
    inner curve and the +/- eps shifts of the outer curve's vertices, with
    jump discontinuities only at those same points, so evaluating values
    and one-sided limits there is exact.  One-sided limits of the upper
    envelope are the lower envelope's values and vice versa, which is why
    each inequality is checked on matched envelopes.
    """
    x = np.concatenate([inner.p, outer.p - eps, outer.p + eps])
    x = np.clip(x, -eps, 1.0 + eps)
    over = np.maximum(
        inner.upper(x) - outer.upper(x + eps),
        inner.lower(x) - outer.lower(x + eps),
    ) - eps
    under = np.maximum(
        outer.lower(x - eps) - inner.lower(x),
        outer.upper(x - eps) - inner.upper(x),
    ) - eps
    gaps = np.maximum(over, under)
    i = int(np.argmax(gaps))
    worst = float(gaps[i])
    if worst <= 0.0:
        return worst, None
    xi = float(x[i])
    qi = float(inner.upper(np.array([xi]))[0] if over[i] >= under[i]
               else inner.lower(np.array([xi]))[0])
    return worst, (xi, qi)


def levy_band_check(
    a: MonotoneCurve, b: MonotoneCurve, epsilon: float
) -> LevyBandCheck:
    """Checks whether each curve's completed graph lies in the other's band."""
    ea, eb = _Envelope(a), _Envelope(b)
    for inner, outer in ((eb, ea), (ea, eb)):
        gap, witness = _band_violation(inner, outer, epsilon)
        if gap > 0.0:
            return LevyBandCheck(epsilon, feasible=False, witness=witness)
    return LevyBandCheck(epsilon, feasible=True)


def levy_distance(a: MonotoneCurve, b: MonotoneCurve) -> float:
    """Levy distance between two completed-graph curves.

    The infimum epsilon such that each graph lies inside the diagonal
    epsilon-band of the other, found by bisection on the exact feasibility
    check to absolute tolerance 1e-9.  Checking containment both ways makes
    the result symmetric by construction.
    """
    ea, eb = _Envelope(a), _Envelope(b)

    def feasible(eps: float) -> bool:
        return (
            _band_violation(eb, ea, eps)[0] <= 0.0
            and _band_violation(ea, eb, eps)[0] <= 0.0
        )

    if feasible(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > LEVY_TOL:
        mid = (lo + hi) / 2.0
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def uniform_distance(a: MonotoneCurve, b: MonotoneCurve) -> float:
    """Sup-norm distance, taking the upper value at jumps.

    The difference is piecewise linear between the union of the two vertex
    sets with discontinuities only at jumps, so the supremum is the larger
    of the breakpoint values and their left limits (which are the lower
    envelopes' values there).
    """
    ea, eb = _Envelope(a), _Envelope(b)
    x = np.union1d(ea.p, eb.p)
    at_points = np.abs(ea.upper(x) - eb.upper(x))
    left_limits = np.abs(ea.lower(x) - eb.lower(x))
    return float(np.max(np.maximum(at_points, left_limits)))


def lemma1_bound(
    fa0: DiscreteDistribution,
    fa1: DiscreteDistribution,
    fb0: DiscreteDistribution,
    fb1: DiscreteDistribution,
) -> float:
    """Sup over finite thresholds of the larger per-hypothesis CDF gap.

    An upper bound on the Levy distance between the two optimal ROC curves
    determined by the pairs.  Step functions attain the sup at support
    points or their left limits, so only those need evaluating.
    """
    worst = 0.0
    for da, db in ((fa0, fb0), (fa1, fb1)):
        points = sorted(
            {v for v in da.support + db.support if v != INF}
        )

        def cdf(dist: DiscreteDistribution, tau: float, strict: bool) -> float:
            if strict:
                return sum(m for v, m in dist.atoms if v < tau)
            return sum(m for v, m in dist.atoms if v <= tau)

        for tau in points:
            for strict in (False, True):
                gap = abs(cdf(da, tau, strict) - cdf(db, tau, strict))
                worst = max(worst, gap)
    return worst


def dkw_roc_bound(n0: int, n1: int, delta: float) -> float:
    """Two-sample DKW tail bound 2 exp(-2 n0 d^2) + 2 exp(-2 n1 d^2).

    The raw bound is returned even when it exceeds 1 and is vacuous.
    """
    if n0 < 1 or n1 < 1:
        raise DomainError("sample counts must be at least 1")
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    return 2.0 * math.exp(-2.0 * n0 * delta**2) + 2.0 * math.exp(
        -2.0 * n1 * delta**2
    )
