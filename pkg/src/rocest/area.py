"""Area under ROC curves: geometric, pairwise-sum, and population forms."""
from __future__ import annotations

import numpy as np

from .core import (
    ConsistencyError,
    DiscreteDistribution,
    DomainError,
    INF,
    MonotoneCurve,
    as_ratio,
    validate_pair,
)
from typing import Sequence


def auc_of_curve(curve: MonotoneCurve) -> float:
    """Exact trapezoid area under a monotone polyline.

    Vertical segments have zero width and contribute nothing.  This is the
    canonical AUC for every estimator output.
    """
    area = 0.0
    for (p0, q0), (p1, q1) in zip(curve.vertices, curve.vertices[1:]):
        area += (p1 - p0) * (q0 + q1) / 2.0
    return area


def pair_term(r1: float, r2: float, lam: float) -> float:
    """One term of the pairwise AUC sum, with the infinity conventions.

    T = max(r1, r2) / (2 (lam + (1-lam) r1)(lam + (1-lam) r2)); if both
    ratios are infinite T = 0, and if exactly one is infinite the finite
    limit 1 / (2 (lam + (1-lam) r)(1-lam)) is used.
    """
    r1, r2 = as_ratio(r1), as_ratio(r2)
    if r1 == INF and r2 == INF:
        return 0.0
    if r2 == INF:
        r1, r2 = r2, r1
    if r1 == INF:
        return 1.0 / (2.0 * (lam + (1.0 - lam) * r2) * (1.0 - lam))
    return max(r1, r2) / (
        2.0 * (lam + (1.0 - lam) * r1) * (lam + (1.0 - lam) * r2)
    )


def auc_ml_formula(ratios: Sequence[float], lam: float) -> float:
    """Pairwise-sum area under the ML ROC curve.

    Averages the pair terms over all ordered sample pairs.  Requires
    lam > 0 when a zero ratio is present and lam < 1 when an infinite
    ratio is present, so every denominator is strictly positive.
    """
    ratios = [as_ratio(r) for r in ratios]
    if not ratios:
        raise DomainError("auc_ml_formula needs at least one ratio")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must be in [0, 1], got {lam}")
    if lam == 0.0 and any(r == 0.0 for r in ratios):
        raise DomainError("lambda must be positive when a ratio is 0")
    if lam == 1.0 and any(r == INF for r in ratios):
        raise DomainError("lambda must be below 1 when a ratio is infinite")
    n = len(ratios)
    finite = np.array([r for r in ratios if r != INF])
    n_inf = n - finite.size
    total = 0.0
    if finite.size:
        w = 1.0 / (lam + (1.0 - lam) * finite)
        pair_max = np.maximum.outer(finite, finite)
        total += float(np.sum(pair_max * np.outer(w, w))) / 2.0
        if n_inf:
            # Each finite/infinite pair appears twice in the double sum.
            total += n_inf * float(np.sum(w)) / (1.0 - lam)
    return total / n**2


def true_auc(f0: DiscreteDistribution, f1: DiscreteDistribution) -> float:
    """Population AUC of the hypothesis test described by (F0, F1).

    Computes both (1/2) E0[max(R, R')] + F1({inf}) and
    1 - (1/2) E0[min(R, R')] and asserts agreement before returning.
    """
    report = validate_pair(f0, f1)
    if not report.ok:
        raise DomainError("; ".join(report.violations))
    values = np.array([v for v, _ in f0.atoms])
    masses = np.array([m for _, m in f0.atoms])
    weights = np.outer(masses, masses)
    e_max = float(np.sum(np.maximum.outer(values, values) * weights))
    e_min = float(np.sum(np.minimum.outer(values, values) * weights))
    via_max = e_max / 2.0 + f1.mass_at(INF)
    via_min = 1.0 - e_min / 2.0
    if abs(via_max - via_min) > 1e-9:
        raise ConsistencyError(
            f"AUC identities disagree: {via_max} vs {via_min}"
        )
    return via_max
