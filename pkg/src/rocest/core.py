"""Discrete likelihood-ratio distributions and optimal ROC curves.

A binary hypothesis test with likelihood ratio R is described by the pair
(F0, F1) of distributions of R under the two hypotheses, linked by
dF1(r) = r dF0(r).  Either distribution, or the optimal ROC curve itself,
determines the other two; the conversions live here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

INF = math.inf

#: Absolute tolerance for mass sums, atom matching and concavity checks.
ATOL = 1e-9

#: Residual masses below this are treated as rounding noise and dropped.
RESIDUAL_ATOL = 1e-12


class DomainError(ValueError):
    """An argument is outside the domain of an operation."""


class ConsistencyError(RuntimeError):
    """Two internally computed routes disagree beyond tolerance."""


def as_ratio(value: float) -> float:
    """Validates a likelihood-ratio value in [0, inf].

    Args:
        value: Nonnegative real number or ``math.inf``.

    Returns:
        The value as a float.

    Raises:
        DomainError: If the value is NaN or negative.
    """
    value = float(value)
    if math.isnan(value) or value < 0:
        raise DomainError(f"likelihood ratio must be in [0, inf], got {value!r}")
    return value


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finitely supported probability distribution on [0, inf].

    Attributes:
        atoms: Sorted tuple of (value, mass) pairs with strictly increasing
            values, strictly positive masses summing to one, and an atom at
            infinity (if any) last.
    """

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        atoms = tuple((as_ratio(v), float(m)) for v, m in self.atoms)
        if not atoms:
            raise DomainError("distribution needs at least one atom")
        for (v0, _), (v1, _) in zip(atoms, atoms[1:]):
            if not v0 < v1:
                raise DomainError("atom values must be strictly increasing")
        for _, m in atoms:
            if not m > 0:
                raise DomainError("atom masses must be strictly positive")
        total = sum(m for _, m in atoms)
        if abs(total - 1.0) > ATOL:
            raise DomainError(f"atom masses sum to {total}, expected 1")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "_index", dict(atoms))

    @classmethod
    def from_dict(cls, masses: Mapping[float, float]) -> "DiscreteDistribution":
        return cls(tuple(sorted(masses.items())))

    @classmethod
    def from_items(
        cls, items: Iterable[tuple[float, float]]
    ) -> "DiscreteDistribution":
        """Builds a distribution, accumulating masses over equal values."""
        acc: dict[float, float] = {}
        for v, m in items:
            acc[v] = acc.get(v, 0.0) + m
        return cls.from_dict(acc)

    def mass_at(self, value: float) -> float:
        return self._index.get(as_ratio(value), 0.0)

    @property
    def support(self) -> tuple[float, ...]:
        return tuple(v for v, _ in self.atoms)

    def finite_atoms(self) -> tuple[tuple[float, float], ...]:
        return tuple((v, m) for v, m in self.atoms if v != INF)

    def as_json_dict(self) -> dict:
        return {
            "atoms": [["inf" if v == INF else v, m] for v, m in self.atoms]
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "DiscreteDistribution":
        atoms = [
            (INF if v == "inf" else float(v), float(m))
            for v, m in data["atoms"]
        ]
        return cls(tuple(atoms))


@dataclass(frozen=True)
class MonotoneCurve:
    """Completed graph of a nondecreasing function on [0, 1].

    Jumps are stored as vertical segments, so the vertex list is the whole
    graph and geometric band checks can work on vertices alone.

    Attributes:
        vertices: Tuple of (p, q) pairs, both coordinates nondecreasing,
            starting at p = 0 and ending at p = 1, without consecutive
            duplicates.
    """

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        verts = []
        for p, q in self.vertices:
            p, q = float(p), float(q)
            if math.isnan(p) or math.isnan(q):
                raise DomainError("curve vertex is NaN")
            # Snap fp noise at the unit-square boundary.
            p = min(max(p, 0.0), 1.0) if -ATOL <= p <= 1 + ATOL else p
            q = min(max(q, 0.0), 1.0) if -ATOL <= q <= 1 + ATOL else q
            if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
                raise DomainError(f"curve vertex ({p}, {q}) outside unit square")
            if verts and (p, q) == verts[-1]:
                continue
            if verts and (p < verts[-1][0] or q < verts[-1][1]):
                raise DomainError("curve vertices must be nondecreasing")
            verts.append((p, q))
        if not verts or verts[0][0] != 0.0 or verts[-1][0] != 1.0:
            raise DomainError("curve must span p in [0, 1]")
        object.__setattr__(self, "vertices", tuple(verts))

    @property
    def p(self) -> tuple[float, ...]:
        return tuple(p for p, _ in self.vertices)

    @property
    def q(self) -> tuple[float, ...]:
        return tuple(q for _, q in self.vertices)


@dataclass(frozen=True)
class PairReport:
    """Outcome of checking that (F0, F1) describe one hypothesis test."""

    ok: bool
    violations: tuple[str, ...] = field(default=())


def extended_cdf_eval(
    dist: DiscreteDistribution, tau: float, eta: float
) -> float:
    """Evaluates the randomized CDF (1 - eta) F(tau-) + eta F(tau).

    F(inf) is 1 by convention, so the evaluation is surjective onto [0, 1]
    as (tau, eta) ranges lexicographically.
    """
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must be in [0, 1], got {eta}")
    tau = as_ratio(tau)
    below = sum(m for v, m in dist.atoms if v < tau)
    at = dist.mass_at(tau)
    if tau == INF:
        # F(inf) = 1 regardless of whether an atom at inf is stored.
        at = 1.0 - below
    return (1.0 - eta) * below + eta * (below + at)


def f1_from_f0(f0: DiscreteDistribution) -> DiscreteDistribution:
    """Pushes F0 forward through dF1(r) = r dF0(r).

    Mass of F0 at 0 contributes nothing; any deficit 1 - E0[R] becomes an
    atom of F1 at infinity.
    """
    if f0.mass_at(INF) > 0:
        raise DomainError("F0 cannot have an atom at infinity")
    items = [(v, v * m) for v, m in f0.atoms if 0 < v < INF]
    total = sum(m for _, m in items)
    if total > 1.0 + ATOL:
        raise DomainError(
            f"E0[R] = {total} > 1: not a valid H0 likelihood-ratio law"
        )
    residual = 1.0 - total
    if residual > RESIDUAL_ATOL:
        items.append((INF, residual))
    return DiscreteDistribution.from_items(items)


def f0_from_f1(f1: DiscreteDistribution) -> DiscreteDistribution:
    """Inverse of :func:`f1_from_f0`: dF0(r) = (1/r) dF1(r).

    Mass of F1 at infinity contributes nothing; any deficit becomes an atom
    of F0 at 0.
    """
    if f1.mass_at(0.0) > 0:
        raise DomainError("F1 cannot have an atom at 0")
    items = [(v, m / v) for v, m in f1.atoms if v < INF]
    total = sum(m for _, m in items)
    if total > 1.0 + ATOL:
        raise DomainError(
            f"E1[1/R] = {total} > 1: not a valid H1 likelihood-ratio law"
        )
    residual = 1.0 - total
    if residual > RESIDUAL_ATOL:
        items.append((0.0, residual))
    return DiscreteDistribution.from_items(items)


def validate_pair(
    f0: DiscreteDistribution, f1: DiscreteDistribution
) -> PairReport:
    """Checks that F1 is the r dF0 pushforward of F0.

    Returns a structured report rather than raising, so callers can surface
    all violations at once.
    """
    violations = []
    if f0.mass_at(INF) > 0:
        violations.append("F0 has an atom at infinity")
    if f1.mass_at(0.0) > 0:
        violations.append("F1 has an atom at 0")
    support = {v for v in f0.support if 0 < v < INF}
    support |= {v for v in f1.support if 0 < v < INF}
    for v in sorted(support):
        want = v * f0.mass_at(v)
        got = f1.mass_at(v)
        if abs(want - got) > ATOL:
            violations.append(
                f"F1 mass at {v} is {got}, expected r*F0 mass = {want}"
            )
    return PairReport(ok=not violations, violations=tuple(violations))


def roc_from_pair(
    f0: DiscreteDistribution, f1: DiscreteDistribution
) -> MonotoneCurve:
    """Optimal ROC curve of the hypothesis test described by (F0, F1).

    The curve starts at (0, F1({inf})) and appends one linear segment per
    finite support value of F0 in decreasing-threshold order, with width
    F0({v}) and rise F1({v}) = v F0({v}); segment slopes are therefore the
    thresholds and the curve is concave.
    """
    report = validate_pair(f0, f1)
    if not report.ok:
        raise DomainError("; ".join(report.violations))
    p = 0.0
    q = f1.mass_at(INF)
    verts = [(p, q)]
    for v, m in sorted(f0.finite_atoms(), reverse=True):
        p += m
        q += v * m
        verts.append((min(p, 1.0), min(q, 1.0)))
    verts[-1] = (1.0, 1.0)
    return MonotoneCurve(tuple(verts))


def f0_from_roc(curve: MonotoneCurve) -> DiscreteDistribution:
    """Recovers F0 from a concave ROC curve.

    Each maximal linear piece of finite slope s and width w yields the atom
    (s, w); an initial vertical segment at p = 0 is F1 mass at infinity and
    yields no F0 atom.

    Raises:
        DomainError: If the curve is not concave (slopes must be
            nonincreasing within tolerance), i.e. not an optimal ROC.
    """
    pieces: list[tuple[float, float]] = []  # (slope, width), merged collinear
    prev_slope = INF
    for (p0, q0), (p1, q1) in zip(curve.vertices, curve.vertices[1:]):
        w = p1 - p0
        if w == 0.0:
            if p0 == 0.0:
                continue  # initial jump: F1 mass at infinity
            raise DomainError("vertical segment at p > 0: not an optimal ROC")
        s = (q1 - q0) / w
        if s > prev_slope + ATOL:
            raise DomainError("curve is not concave: not an optimal ROC")
        if pieces and abs(pieces[-1][0] - s) < ATOL:
            s_old, w_old = pieces.pop()
            # Merge collinear pieces, width-averaging the slope.
            s = (s_old * w_old + s * w) / (w_old + w)
            w = w_old + w
        pieces.append((s, w))
        prev_slope = s
    return DiscreteDistribution.from_items(pieces)
