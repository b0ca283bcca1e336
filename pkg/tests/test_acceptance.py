"""Acceptance suite: the twelve primary criteria at their stated tolerances.

Each test prints a single ``[criterion N] name: PASS`` line (visible with
``pytest -s`` and in failure output) and then asserts.  Expected values come
from closed-form derivations or from independent oracles implemented here
and in levy_oracle.py; none are copied from the implementation under test.
"""
import itertools
import math

import numpy as np
import pytest
from scipy import integrate
from scipy.stats import norm

from rocest import (
    DiscreteDistribution,
    DomainError,
    ExperimentConfig,
    MonotoneCurve,
    auc_ml_formula,
    auc_of_curve,
    f0_from_roc,
    f0_from_f1,
    f1_from_f0,
    lemma1_bound,
    levy_distance,
    ml_fit,
    mixture_sample_set,
    roc_from_pair,
    run_experiment,
    solve_lambda,
    uniform_distance,
)
from rocest.estimators import LabeledSample
from rocest.scenarios import SCENARIOS
from levy_oracle import levy_oracle
from test_core import random_f0, assert_dist_close
from test_metrics import random_curve

INF = float("inf")
D = DiscreteDistribution.from_dict


def report(number: int, name: str, ok: bool) -> None:
    print(f"[criterion {number}] {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {number} ({name}) failed"


def labeled(label0, label1=()):
    return [LabeledSample(0, r) for r in label0] + [
        LabeledSample(1, r) for r in label1
    ]


class TestCriterion1:
    def test_degenerate_exactness(self):
        fit = ml_fit(labeled([1.0, 1.0], [1.0]))
        point = D({1.0: 1.0})
        ok = (
            fit.auc == 0.5
            and fit.f0_hat == point
            and fit.f1_hat == point
        )
        report(1, "all-ones degenerate exactness", ok)


class TestCriterion2:
    def test_closed_form_fixture(self):
        fit = ml_fit(labeled([0.5], [2.0]))
        ok = abs(fit.lambda_n - 0.5) <= 1e-12
        ok &= abs(fit.f0_hat.mass_at(0.5) - 2 / 3) <= 1e-9
        ok &= abs(fit.f0_hat.mass_at(2.0) - 1 / 3) <= 1e-9
        ok &= abs(fit.auc - 2 / 3) <= 1e-9
        ok &= abs(auc_ml_formula([0.5, 2.0], fit.lambda_n) - 2 / 3) <= 1e-9
        report(2, "{0.5, 2} closed-form fixture", ok)


class TestCriterion3:
    def test_infinity_fixture(self):
        fit = ml_fit(labeled([], [0.25, INF]))
        ok = abs(fit.lambda_n - 1 / 3) <= 1e-9
        ok &= abs(fit.f1_hat.mass_at(0.25) - 0.25) <= 1e-9
        ok &= abs(fit.f1_hat.mass_at(INF) - 0.75) <= 1e-9
        ok &= abs(fit.auc - 0.875) <= 1e-9
        ok &= abs(auc_ml_formula([0.25, INF], fit.lambda_n) - 0.875) <= 1e-9
        report(3, "{0.25, inf} infinity fixture", ok)


def _xlogy(c: float, a: np.ndarray) -> np.ndarray:
    """c * log(a) with the conventions 0 log 0 = 0 and log 0 = -inf."""
    a = np.asarray(a, dtype=float)
    if c == 0:
        return np.zeros_like(a)
    return np.where(a > 0.0, c * np.log(np.clip(a, 1e-300, None)), -np.inf)


def _instance_counts(ratios):
    """Grouped multiplicities: (finite nonzero values, their counts, c0, cinf)."""
    finite = sorted({r for r in ratios if 0.0 < r < INF})
    counts = [sum(1 for r in ratios if r == v) for v in finite]
    c0 = sum(1 for r in ratios if r == 0.0)
    cinf = sum(1 for r in ratios if r == INF)
    return finite, counts, c0, cinf


def _grid_best(finite, counts, c0, cinf, step=0.02):
    """Best reduced log-likelihood over the constraint-simplex grid.

    Candidates put grid-aligned mass a_j on each finite nonzero value; the
    equality constraints then force a_0 = 1 - sum(a_j) and
    b = 1 - sum(a_j v_j), and any candidate with negative forced mass is
    infeasible.
    """
    m = len(finite)
    if m == 0:
        return 0.0
    axis = np.round(np.arange(0.0, 1.0 + step / 2.0, step), 10)
    mesh = np.meshgrid(*([axis] * m), indexing="ij")
    a = np.stack([g.reshape(-1) for g in mesh], axis=1)
    total = a.sum(axis=1)
    keep = total <= 1.0 + 1e-12
    a, total = a[keep], total[keep]
    a0 = np.clip(1.0 - total, 0.0, None)
    b = 1.0 - a @ np.asarray(finite)
    keep = b >= -1e-12
    a, a0, b = a[keep], a0[keep], np.clip(b[keep], 0.0, None)
    ll = _xlogy(c0, a0) + _xlogy(cinf, b)
    for j, c in enumerate(counts):
        ll = ll + _xlogy(c, a[:, j])
    return float(np.max(ll))


def _reduced_objective(fit, finite, counts, c0, cinf):
    ll = float(_xlogy(c0, np.array([fit.f0_hat.mass_at(0.0)]))[0])
    ll += float(_xlogy(cinf, np.array([fit.f1_hat.mass_at(INF)]))[0])
    for v, c in zip(finite, counts):
        ll += float(_xlogy(c, np.array([fit.f0_hat.mass_at(v)]))[0])
    return ll


class TestCriterion4:
    def test_kkt_grid_oracle(self):
        rng = np.random.default_rng(404)
        worst = INF
        for _ in range(200):
            pool = list(rng.uniform(0.05, 4.0, size=3).round(3))
            if rng.random() < 0.25:
                pool[0] = 0.0
            if rng.random() < 0.25:
                pool[-1] = INF
            k = int(rng.integers(1, 4))
            distinct = list(rng.choice(len(pool), size=k, replace=False))
            n = int(rng.integers(1, 6))
            ratios = [pool[distinct[rng.integers(0, k)]] for _ in range(n)]
            samples = [
                LabeledSample(
                    0 if r == 0.0 else 1 if r == INF else int(rng.integers(2)),
                    r,
                )
                for r in ratios
            ]
            fit = ml_fit(samples)
            finite, counts, c0, cinf = _instance_counts(ratios)
            achieved = _reduced_objective(fit, finite, counts, c0, cinf)
            best = _grid_best(finite, counts, c0, cinf)
            worst = min(worst, achieved - best)
        report(4, f"KKT grid oracle (worst margin {worst:.3g})", worst >= -1e-9)


class TestCriterion5:
    def test_formula_geometry_equality(self):
        rng = np.random.default_rng(505)
        checked = 0
        worst = 0.0
        while checked < 200:
            n0 = int(rng.integers(1, 10))
            n1 = int(rng.integers(1, 10))
            r0 = list(rng.uniform(0.05, 4.0, size=n0))
            r1 = list(rng.uniform(0.05, 4.0, size=n1))
            if rng.random() < 0.25:
                r0[0] = 0.0
            if rng.random() < 0.25:
                r1[0] = INF
            ratios = r0 + r1
            lam = solve_lambda(ratios)
            if not 0.01 < lam < 0.99:
                continue
            fit = ml_fit(labeled(r0, r1))
            worst = max(
                worst, abs(auc_ml_formula(ratios, fit.lambda_n) - fit.auc)
            )
            checked += 1
        report(5, f"formula-geometry AUC equality (max gap {worst:.3g})",
               worst < 1e-9)


class TestCriterion6:
    def test_ml_levy_consistency(self):
        reps = run_experiment(
            ExperimentConfig("binormal", 2000, 2000, 50, 606, ("ML",))
        ).results["ML"]
        single = reps.distances[0]
        ok = single < 0.05 and reps.mean_levy < 0.03
        report(
            6,
            f"ML Levy consistency (single {single:.4f}, "
            f"mean {reps.mean_levy:.4f})",
            ok,
        )


class TestCriterion7:
    def test_lambda_converges_to_alpha(self):
        scenario = SCENARIOS["binormal"]
        n = 20000
        worst = 0.0
        for alpha in (0.0, 0.25, 0.5, 1.0):
            n0 = int(round(alpha * n))
            rng = np.random.default_rng(707 + n0)
            samples = mixture_sample_set(scenario, n0, n - n0, rng)
            lam = solve_lambda([s.ratio for s in samples])
            worst = max(worst, abs(lam - alpha))
        report(7, f"lambda_n -> alpha (max error {worst:.4f})", worst < 0.02)


class TestCriterion8:
    def test_auc_consistency_against_quad_oracle(self):
        # P{X1 > X0} for X0 ~ N(0,1), X1 ~ N(1,1), by numeric integration
        # of the independent scipy normal density/CDF.
        oracle, err = integrate.quad(
            lambda x: norm.pdf(x, loc=1.0) * norm.cdf(x), -np.inf, np.inf
        )
        assert err < 1e-6
        assert oracle == pytest.approx(0.760250, abs=1e-6)
        rng = np.random.default_rng(808)
        samples = mixture_sample_set(SCENARIOS["binormal"], 2000, 2000, rng)
        fit = ml_fit(samples)
        gap = abs(fit.auc - oracle)
        report(8, f"AUC consistency (|AUC_ML - oracle| = {gap:.4f})",
               gap < 0.02)


class TestCriterion9:
    def test_dkw_guarantee(self):
        stats = run_experiment(
            ExperimentConfig("binormal", 200, 200, 1000, 909, ("E",))
        ).results["E"]
        freq = sum(1 for d in stats.distances if d >= 0.1) / len(
            stats.distances
        )
        report(9, f"DKW guarantee (exceedance frequency {freq:.4f})",
               freq <= 0.0733)


class TestCriterion10:
    def test_qualitative_reproduction(self):
        results = run_experiment(
            ExperimentConfig("binormal", 100, 2, 500, 1010)
        ).results
        mean_e = results["E"].mean_levy
        mean_ce = results["CE"].mean_levy
        mean_ml = results["ML"].mean_levy
        ok = mean_ml < mean_e and mean_ce <= mean_e
        one_sided = run_experiment(
            ExperimentConfig("binormal", 100, 0, 500, 1010, ("ML",))
        ).results["ML"]
        ok &= math.isfinite(one_sided.mean_levy)
        for name in ("E", "CE"):
            try:
                ExperimentConfig("binormal", 100, 0, 500, 1010, (name,))
            except DomainError:
                continue
            ok = False
        report(
            10,
            f"unbalanced-sample reproduction (E {mean_e:.4f}, "
            f"CE {mean_ce:.4f}, ML {mean_ml:.4f})",
            ok,
        )


class TestCriterion11:
    def test_metric_properties(self):
        rng = np.random.default_rng(1111)
        ok = True
        worst_oracle = 0.0
        for i in range(500):
            a, b, c = (random_curve(rng) for _ in range(3))
            lab, lba = levy_distance(a, b), levy_distance(b, a)
            ok &= lab == lba
            # 1e-9 slack matches the bisection tolerance of levy_distance.
            ok &= lab <= uniform_distance(a, b) + 1e-9
            ok &= levy_distance(a, c) <= lab + levy_distance(b, c) + 1e-8
            if i % 5 == 0:
                worst_oracle = max(worst_oracle, abs(lab - levy_oracle(a, b)))
        ok &= worst_oracle <= 2e-4
        for _ in range(100):
            fa0, fa1 = random_discrete_pair(rng)
            fb0, fb1 = random_discrete_pair(rng)
            dist = levy_distance(
                roc_from_pair(fa0, fa1), roc_from_pair(fb0, fb1)
            )
            ok &= dist <= lemma1_bound(fa0, fa1, fb0, fb1) + 1e-9
        report(
            11,
            f"metric properties (max oracle gap {worst_oracle:.3g})",
            ok,
        )


def random_discrete_pair(rng):
    from rocest import random_discrete_bht

    return random_discrete_bht(rng)


class TestCriterion12:
    def test_conversion_round_trips(self):
        rng = np.random.default_rng(1212)
        ok = True
        for _ in range(500):
            f0 = random_f0(rng)
            f1 = f1_from_f0(f0)
            back = f0_from_f1(f1)
            try:
                assert_dist_close(f0, back, atol=1e-9)
                via_roc = f0_from_roc(roc_from_pair(f0, f1))
                assert_dist_close(f0, via_roc, atol=1e-9)
            except AssertionError:
                ok = False
                break
        report(12, "conversion round trips", ok)
