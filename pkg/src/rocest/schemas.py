"""Pydantic request/response models for the HTTP service.

Infinite ratio values cannot be encoded as JSON numbers, so wherever a
likelihood ratio appears on the wire it is either a finite number or the
string "inf".
"""
from __future__ import annotations

import math
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

RatioIn = float | Literal["inf"]


def ratio_from_wire(value: RatioIn) -> float:
    return math.inf if value == "inf" else float(value)


def ratio_to_wire(value: float) -> RatioIn:
    return "inf" if value == math.inf else value


class DistributionModel(BaseModel):
    """Atoms of a discrete distribution on [0, inf]."""

    atoms: list[tuple[RatioIn, float]]


class CurveModel(BaseModel):
    """Vertices of a monotone curve in the unit square."""

    vertices: list[tuple[float, float]] = Field(min_length=2)


class FitRequest(BaseModel):
    samples: list[tuple[Literal[0, 1], RatioIn]] = Field(min_length=1)
    estimator: Literal["E", "CE", "ML"]


class FitResponse(BaseModel):
    estimator: Literal["E", "CE", "ML"]
    curve: CurveModel
    lambda_n: Optional[float] = None
    auc: Optional[float] = None
    f0: Optional[DistributionModel] = None
    f1: Optional[DistributionModel] = None


class DistanceRequest(BaseModel):
    curve_a: CurveModel
    curve_b: CurveModel
    metric: Literal["levy", "uniform"]


class DistanceResponse(BaseModel):
    metric: Literal["levy", "uniform"]
    distance: float


class AucRequest(BaseModel):
    curve: CurveModel


class AucResponse(BaseModel):
    auc: float


class BoundRequest(BaseModel):
    n0: int = Field(ge=1)
    n1: int = Field(ge=1)
    delta: float

    @field_validator("delta")
    @classmethod
    def _positive_delta(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("delta must be positive")
        return v


class BoundResponse(BaseModel):
    bound: float


class SimulateRequest(BaseModel):
    scenario: str = "binormal"
    n0: int = Field(ge=0)
    n1: int = Field(ge=0)
    replications: int = Field(ge=1)
    seed: int = Field(ge=0, lt=2**64)
    estimators: list[Literal["E", "CE", "ML"]] = ["E", "CE", "ML"]


class EstimatorStatsModel(BaseModel):
    mean_levy: float
    stderr: float
    n_reps: int


class SimulateResponse(BaseModel):
    scenario: str
    n0: int
    n1: int
    replications: int
    seed: int
    estimators: dict[str, EstimatorStatsModel]
    per_replication: dict[str, list[float]]
