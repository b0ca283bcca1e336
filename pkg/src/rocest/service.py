"""FastAPI service exposing the estimators, metrics and experiment harness.

Error mapping: domain/validation failures in the core raise DomainError and
become 422 responses; internal consistency failures become 500 responses
with a distinguishing detail kind.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .area import auc_of_curve
from .core import (
    ConsistencyError,
    DiscreteDistribution,
    DomainError,
    MonotoneCurve,
)
from .estimators import LabeledSample, concavify, empirical_roc, ml_fit
from .metrics import levy_distance, uniform_distance, dkw_roc_bound
from .scenarios import ExperimentConfig, run_experiment
from .schemas import (
    AucRequest,
    AucResponse,
    BoundRequest,
    BoundResponse,
    CurveModel,
    DistanceRequest,
    DistanceResponse,
    DistributionModel,
    EstimatorStatsModel,
    FitRequest,
    FitResponse,
    SimulateRequest,
    SimulateResponse,
    ratio_from_wire,
    ratio_to_wire,
)

app = FastAPI(
    title="rocest",
    version=__version__,
    description="Optimal-ROC estimation from likelihood-ratio samples.",
)


@app.exception_handler(DomainError)
async def _domain_error(request: Request, exc: DomainError) -> JSONResponse:
    return JSONResponse(
        status_code=422,
        content={"detail": str(exc), "kind": "validation"},
    )


@app.exception_handler(ConsistencyError)
async def _consistency_error(
    request: Request, exc: ConsistencyError
) -> JSONResponse:
    return JSONResponse(
        status_code=500,
        content={"detail": str(exc), "kind": "internal"},
    )


def _curve_model(curve: MonotoneCurve) -> CurveModel:
    return CurveModel(vertices=list(curve.vertices))


def _curve_from_model(model: CurveModel) -> MonotoneCurve:
    return MonotoneCurve(tuple(model.vertices))


def _dist_model(dist: DiscreteDistribution) -> DistributionModel:
    return DistributionModel(
        atoms=[(ratio_to_wire(v), m) for v, m in dist.atoms]
    )


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/fit", response_model=FitResponse)
def fit(request: FitRequest) -> FitResponse:
    samples = [
        LabeledSample(label, ratio_from_wire(ratio))
        for label, ratio in request.samples
    ]
    if request.estimator == "ML":
        result = ml_fit(samples)
        return FitResponse(
            estimator="ML",
            curve=_curve_model(result.curve),
            lambda_n=result.lambda_n,
            auc=result.auc,
            f0=_dist_model(result.f0_hat),
            f1=_dist_model(result.f1_hat),
        )
    curve = empirical_roc(samples)
    if request.estimator == "CE":
        curve = concavify(curve)
    return FitResponse(estimator=request.estimator, curve=_curve_model(curve))


@app.post("/distance", response_model=DistanceResponse)
def distance(request: DistanceRequest) -> DistanceResponse:
    a = _curve_from_model(request.curve_a)
    b = _curve_from_model(request.curve_b)
    fn = levy_distance if request.metric == "levy" else uniform_distance
    return DistanceResponse(metric=request.metric, distance=fn(a, b))


@app.post("/auc", response_model=AucResponse)
def auc(request: AucRequest) -> AucResponse:
    return AucResponse(auc=auc_of_curve(_curve_from_model(request.curve)))


@app.post("/bound", response_model=BoundResponse)
def bound(request: BoundRequest) -> BoundResponse:
    return BoundResponse(
        bound=dkw_roc_bound(request.n0, request.n1, request.delta)
    )


@app.post("/simulate", response_model=SimulateResponse)
def simulate(request: SimulateRequest) -> SimulateResponse:
    config = ExperimentConfig(
        scenario=request.scenario,
        n0=request.n0,
        n1=request.n1,
        replications=request.replications,
        seed=request.seed,
        estimators=tuple(request.estimators),
    )
    report = run_experiment(config)
    return SimulateResponse(
        scenario=config.scenario,
        n0=config.n0,
        n1=config.n1,
        replications=config.replications,
        seed=config.seed,
        estimators={
            name: EstimatorStatsModel(
                mean_levy=stats.mean_levy,
                stderr=stats.stderr,
                n_reps=len(stats.distances),
            )
            for name, stats in report.results.items()
        },
        per_replication={
            name: list(stats.distances)
            for name, stats in report.results.items()
        },
    )
