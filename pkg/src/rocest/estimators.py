"""ROC estimators from likelihood-ratio samples.

Three estimators are provided: the empirical staircase built from the two
labeled sample groups separately, its least concave majorant, and the
label-free maximum-likelihood estimator characterized by per-sample weights
1/(lambda + (1 - lambda) R_i).
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    ATOL,
    INF,
    RESIDUAL_ATOL,
    DiscreteDistribution,
    DomainError,
    MonotoneCurve,
    as_ratio,
    roc_from_pair,
    validate_pair,
)

#: Bisection tolerance for the mixing-parameter solver.
LAMBDA_TOL = 1e-12


@dataclass(frozen=True)
class LabeledSample:
    """A likelihood-ratio observation with its generating hypothesis."""

    label: int
    ratio: float

    def __post_init__(self):
        if self.label not in (0, 1):
            raise DomainError(f"label must be 0 or 1, got {self.label!r}")
        object.__setattr__(self, "ratio", as_ratio(self.ratio))


@dataclass(frozen=True)
class MlFit:
    """Maximum-likelihood solution bundle.

    Attributes:
        lambda_n: Estimated mixing parameter in [0, 1].
        f0_hat: Estimated ratio distribution under H0.
        f1_hat: Estimated ratio distribution under H1.
        curve: The estimated optimal ROC curve.
        auc: Geometric (trapezoid) area under ``curve``.
    """

    lambda_n: float
    f0_hat: DiscreteDistribution
    f1_hat: DiscreteDistribution
    curve: MonotoneCurve
    auc: float


def empirical_cdfs(
    samples: Sequence[LabeledSample],
) -> tuple[DiscreteDistribution, DiscreteDistribution]:
    """Separate empirical distributions of the label-0 and label-1 ratios."""
    groups: dict[int, list[float]] = {0: [], 1: []}
    for s in samples:
        groups[s.label].append(s.ratio)
    if not groups[0] or not groups[1]:
        raise DomainError(
            "empirical estimator undefined for one-sided samples"
        )
    dists = []
    for k in (0, 1):
        n = len(groups[k])
        dists.append(
            DiscreteDistribution.from_items((r, 1.0 / n) for r in groups[k])
        )
    return dists[0], dists[1]


def empirical_roc(samples: Sequence[LabeledSample]) -> MonotoneCurve:
    """Empirical ROC staircase.

    Sweeping the threshold down through the pooled sample values moves the
    operating point vertically for values seen only under label 1,
    horizontally for values seen only under label 0, and diagonally for
    ties.  Depends on the samples only through their ranks.
    """
    counts: dict[int, Counter] = {0: Counter(), 1: Counter()}
    for s in samples:
        counts[s.label][s.ratio] += 1
    n0, n1 = sum(counts[0].values()), sum(counts[1].values())
    if n0 == 0 or n1 == 0:
        raise DomainError(
            "empirical estimator undefined for one-sided samples"
        )
    p, q = 0.0, 0.0
    verts = [(0.0, 0.0)]
    for v in sorted(set(counts[0]) | set(counts[1]), reverse=True):
        p += counts[0][v] / n0
        q += counts[1][v] / n1
        verts.append((min(p, 1.0), min(q, 1.0)))
    verts[-1] = (1.0, 1.0)
    return MonotoneCurve(tuple(verts))


def concavify(curve: MonotoneCurve) -> MonotoneCurve:
    """Least concave majorant of a monotone curve.

    Equivalently, the upper boundary of the convex hull of the region under
    the curve, computed by a monotone-chain scan over the vertices.
    """
    hull: list[tuple[float, float]] = []
    for vertex in curve.vertices:
        while len(hull) >= 2:
            (p0, q0), (p1, q1) = hull[-2], hull[-1]
            # Pop while the middle point is on or below the chord.
            if (p1 - p0) * (vertex[1] - q0) >= (vertex[0] - p0) * (q1 - q0):
                hull.pop()
            else:
                break
        # At equal p keep only the highest point (vertical jumps collapse).
        if hull and hull[-1][0] == vertex[0]:
            hull.pop()
        hull.append(vertex)
    if hull[0][0] != 0.0:
        raise AssertionError("hull lost the initial vertex")
    return MonotoneCurve(tuple(hull))


def phi_n(ratios: Sequence[float], lam: float) -> float:
    """Mean of 1/(lam + (1 - lam) R_i), the mixing-parameter criterion.

    Defined as exactly 1 at lam = 1.  For lam < 1 an infinite ratio
    contributes 0, and a zero ratio at lam = 0 makes the value infinite.
    """
    if not ratios:
        raise DomainError("phi_n needs at least one ratio")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must be in [0, 1], got {lam}")
    if lam == 1.0:
        return 1.0
    total = 0.0
    for r in ratios:
        r = as_ratio(r)
        if r == INF:
            continue
        denom = lam + (1.0 - lam) * r
        if denom == 0.0:
            return INF
        total += 1.0 / denom
    return total / len(ratios)


def solve_lambda(ratios: Sequence[float]) -> float:
    """Smallest lambda in [0, 1] with phi_n(lambda) <= 1.

    phi_n is convex, so the solution is 0, 1, or the unique interior root
    of phi_n = 1, which is located by bisection to absolute tolerance 1e-12.
    """
    ratios = [as_ratio(r) for r in ratios]
    if not ratios:
        raise DomainError("solve_lambda needs at least one ratio")
    if phi_n(ratios, 0.0) <= 1.0:
        return 0.0
    has_inf = any(r == INF for r in ratios)
    if not has_inf:
        finite_mean = sum(ratios) / len(ratios)
        if finite_mean <= 1.0:
            # phi_n stays above 1 on [0, 1); the minimum is at the endpoint.
            return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > LAMBDA_TOL:
        mid = (lo + hi) / 2.0
        value = phi_n(ratios, mid) if mid < 1.0 else phi_n(ratios, 1.0 - 1e-16)
        if abs(value - 1.0) < LAMBDA_TOL:
            return mid
        if value > 1.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def ml_fit(samples: Sequence[LabeledSample]) -> MlFit:
    """Maximum-likelihood estimate of (F0, F1, ROC) from ratio samples.

    The labels are accepted but ignored: the estimator depends on the
    ratio values only.  Per-sample F0 weight is 1/(n (lam + (1 - lam) R)),
    F1 weight is R times that; residual mass goes to 0 for F0 and to
    infinity for F1.
    """
    if not samples:
        raise DomainError("ml_fit needs at least one sample")
    ratios = [s.ratio for s in samples]
    lam = solve_lambda(ratios)
    n = len(ratios)
    f0_items: list[tuple[float, float]] = []
    f1_items: list[tuple[float, float]] = []
    for r in ratios:
        if r == INF:
            f1_items.append((INF, 1.0 / (n * (1.0 - lam))))
            continue
        if r == 0.0:
            f0_items.append((0.0, 1.0 / (n * lam)))
            continue
        w = 1.0 / (n * (lam + (1.0 - lam) * r))
        f0_items.append((r, w))
        f1_items.append((r, r * w))
    f0_residual = 1.0 - sum(m for _, m in f0_items)
    if f0_residual > RESIDUAL_ATOL:
        f0_items.append((0.0, f0_residual))
    f1_residual = 1.0 - sum(m for _, m in f1_items)
    if f1_residual > RESIDUAL_ATOL:
        f1_items.append((INF, f1_residual))
    f0_hat = DiscreteDistribution.from_items(f0_items)
    f1_hat = DiscreteDistribution.from_items(f1_items)
    curve = roc_from_pair(f0_hat, f1_hat)
    from .area import auc_of_curve  # local import avoids a module cycle

    return MlFit(
        lambda_n=lam,
        f0_hat=f0_hat,
        f1_hat=f1_hat,
        curve=curve,
        auc=auc_of_curve(curve),
    )


def log_likelihood(
    samples: Sequence[LabeledSample],
    f0: DiscreteDistribution,
    f1: DiscreteDistribution,
) -> float:
    """Log-probability of the samples under a candidate (F0, F1) pair.

    Each sample contributes the log of the mass its label's distribution
    puts on its ratio value, with log 0 = -inf.
    """
    report = validate_pair(f0, f1)
    if not report.ok:
        raise DomainError("; ".join(report.violations))
    total = 0.0
    dists = (f0, f1)
    for s in samples:
        mass = dists[s.label].mass_at(s.ratio)
        if mass == 0.0:
            return -INF
        total += math.log(mass)
    return total


def parse_sample_lines(lines: Iterable[str]) -> list[LabeledSample]:
    """Parses the label<TAB>ratio sample format.

    Blank lines and lines starting with ``#`` are ignored; ``inf``
    (case-insensitive) is the only accepted spelling of infinity.

    Raises:
        DomainError: Naming the offending 1-based line number.
    """
    samples = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise DomainError(
                f"line {lineno}: expected 'label<TAB>ratio', got {raw!r}"
            )
        label_text, ratio_text = parts[0].strip(), parts[1].strip()
        if label_text not in ("0", "1"):
            raise DomainError(f"line {lineno}: label must be 0 or 1")
        if ratio_text.lower() == "inf":
            ratio = INF
        else:
            try:
                ratio = float(ratio_text)
            except ValueError:
                raise DomainError(
                    f"line {lineno}: cannot parse ratio {ratio_text!r}"
                ) from None
            if not math.isfinite(ratio):
                raise DomainError(
                    f"line {lineno}: 'inf' is the only accepted non-finite ratio"
                )
        try:
            samples.append(LabeledSample(int(label_text), ratio))
        except DomainError as exc:
            raise DomainError(f"line {lineno}: {exc}") from None
    return samples
