"""Test-bed generation and the Monte Carlo experiment harness.

The binormal scenario draws the observation from N(0, 1) or N(1, 1) and
returns the ratio exp(X - 1/2); its true ROC has the closed form
1 - Phi(Phi^{-1}(1 - p) - 1).  Experiments replicate sampling, fit the
requested estimators, and report Levy distances to the true curve.
"""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import DiscreteDistribution, DomainError, MonotoneCurve, f1_from_f0
from .estimators import LabeledSample, concavify, empirical_roc, ml_fit
from .metrics import levy_distance

_NORMAL = statistics.NormalDist()

#: Grid resolution for the analytic true-ROC polyline.  The grid-induced
#: Levy error is bounded by half the grid step, well under test tolerances.
TRUE_ROC_GRID = 2001

ESTIMATOR_NAMES = ("E", "CE", "ML")


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def normal_quantile(u: float) -> float:
    """Standard normal quantile for u strictly inside (0, 1)."""
    if not 0.0 < u < 1.0:
        raise DomainError(f"quantile argument must be in (0, 1), got {u}")
    return _NORMAL.inv_cdf(u)


def _uniform_open(rng: np.random.Generator) -> float:
    """Uniform draw guaranteed to be strictly inside (0, 1)."""
    u = rng.random()
    while u == 0.0:
        u = rng.random()
    return u


class BinormalScenario:
    """Unit-variance Gaussian shift test: N(0, 1) versus N(1, 1).

    Ratios are strictly positive and finite.  Sampling goes through the
    inverse CDF so the draws are reproducible from the uniform stream.
    """

    name = "binormal"

    def sample(self, label: int, rng: np.random.Generator) -> float:
        x = normal_quantile(_uniform_open(rng)) + label
        return math.exp(x - 0.5)

    def roc_value(self, p: float) -> float:
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"p must be in [0, 1], got {p}")
        if p == 0.0:
            return 0.0
        if p == 1.0:
            return 1.0
        return 1.0 - normal_cdf(normal_quantile(1.0 - p) - 1.0)

    def true_roc(self, grid_size: int = TRUE_ROC_GRID) -> MonotoneCurve:
        if grid_size < 2:
            raise DomainError("grid size must be at least 2")
        ps = np.linspace(0.0, 1.0, grid_size)
        verts = [(float(p), self.roc_value(float(p))) for p in ps]
        return MonotoneCurve(tuple(verts))


SCENARIOS = {"binormal": BinormalScenario()}


def binormal_sample(label: int, rng: np.random.Generator) -> float:
    return SCENARIOS["binormal"].sample(label, rng)


def binormal_true_roc(grid_size: int = TRUE_ROC_GRID) -> MonotoneCurve:
    return SCENARIOS["binormal"].true_roc(grid_size)


def binormal_roc_value(p: float) -> float:
    return SCENARIOS["binormal"].roc_value(p)


def random_discrete_bht(
    rng: np.random.Generator, max_support: int = 4
) -> tuple[DiscreteDistribution, DiscreteDistribution]:
    """Random finitely supported test, valid by construction.

    Draws positive support values and Dirichlet masses for F0, rescales the
    values if needed so E0[R] <= 1, and derives F1 by the pushforward.
    """
    if max_support < 1:
        raise DomainError("support size must be at least 1")
    k = int(rng.integers(1, max_support + 1))
    values = np.sort(rng.uniform(0.05, 3.0, size=k))
    while len(set(values)) < k:
        values = np.sort(rng.uniform(0.05, 3.0, size=k))
    masses = rng.dirichlet(np.ones(k))
    mean = float(values @ masses)
    if mean > 1.0:
        values = values / mean
    f0 = DiscreteDistribution.from_items(zip(values.tolist(), masses.tolist()))
    return f0, f1_from_f0(f0)


def mixture_sample_set(
    scenario: BinormalScenario, n0: int, n1: int, rng: np.random.Generator
) -> list[LabeledSample]:
    """Draws n0 label-0 and n1 label-1 samples from the scenario."""
    if n0 + n1 < 1:
        raise DomainError("need at least one sample")
    samples = [LabeledSample(0, scenario.sample(0, rng)) for _ in range(n0)]
    samples += [LabeledSample(1, scenario.sample(1, rng)) for _ in range(n1)]
    return samples


@dataclass(frozen=True)
class ExperimentConfig:
    """One Monte Carlo experiment: scenario, sizes, replications, seed."""

    scenario: str
    n0: int
    n1: int
    replications: int
    seed: int
    estimators: tuple[str, ...] = ESTIMATOR_NAMES

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise DomainError(f"unknown scenario {self.scenario!r}")
        if self.replications < 1:
            raise DomainError("replications must be at least 1")
        if self.n0 < 0 or self.n1 < 0 or self.n0 + self.n1 < 1:
            raise DomainError("need nonnegative sizes with n0 + n1 >= 1")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        estimators = tuple(self.estimators)
        if not estimators:
            raise DomainError("at least one estimator is required")
        for name in estimators:
            if name not in ESTIMATOR_NAMES:
                raise DomainError(f"unknown estimator {name!r}")
            if name in ("E", "CE") and (self.n0 < 1 or self.n1 < 1):
                raise DomainError(
                    f"estimator {name} requires samples under both hypotheses"
                )
        object.__setattr__(self, "estimators", estimators)


@dataclass(frozen=True)
class EstimatorStats:
    """Replication statistics for one estimator."""

    mean_levy: float
    stderr: float
    distances: tuple[float, ...] = field(repr=False)


@dataclass(frozen=True)
class ExperimentReport:
    """Per-estimator Levy-distance statistics for one configuration."""

    config: ExperimentConfig
    results: dict[str, EstimatorStats]

    def as_json_dict(self) -> dict:
        return {
            "scenario": self.config.scenario,
            "n0": self.config.n0,
            "n1": self.config.n1,
            "replications": self.config.replications,
            "seed": self.config.seed,
            "estimators": {
                name: {
                    "mean_levy": stats.mean_levy,
                    "stderr": stats.stderr,
                    "n_reps": len(stats.distances),
                }
                for name, stats in self.results.items()
            },
        }


def _fit_curve(name: str, samples: Sequence[LabeledSample]) -> MonotoneCurve:
    if name == "E":
        return empirical_roc(samples)
    if name == "CE":
        return concavify(empirical_roc(samples))
    return ml_fit(samples).curve


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Runs the replication loop and reports mean Levy distances.

    Replication r uses the fresh stream seeded with seed + r, so the
    report does not depend on execution order and is reproducible
    bit-for-bit from the config alone.
    """
    scenario = SCENARIOS[config.scenario]
    truth = scenario.true_roc()
    distances: dict[str, list[float]] = {n: [] for n in config.estimators}
    for rep in range(config.replications):
        rng = np.random.default_rng((config.seed + rep) % 2**64)
        samples = mixture_sample_set(scenario, config.n0, config.n1, rng)
        for name in config.estimators:
            curve = _fit_curve(name, samples)
            distances[name].append(levy_distance(curve, truth))
    results = {}
    for name, dists in distances.items():
        mean = sum(dists) / len(dists)
        if len(dists) > 1:
            std = statistics.stdev(dists)
            stderr = std / math.sqrt(len(dists))
        else:
            stderr = 0.0
        results[name] = EstimatorStats(mean, stderr, tuple(dists))
    return ExperimentReport(config=config, results=results)
