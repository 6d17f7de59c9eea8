"""Pydantic request/response models for the HTTP service and the CLI client.

Field order in the response models matches the on-disk file schemas, so a
``model_dump`` rendered by the canonical writer is exactly the file the CLI
writes.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class OperatorPayload(BaseModel):
    """Row-major matrix with explicit dimension; absent imag means zeros."""

    model_config = ConfigDict(extra="forbid")

    dim: int = Field(ge=1)
    real: list[list[float]]
    imag: list[list[float]] | None = None


class TolerancesPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tol_eig: float = 1e-9
    tol_rank: float = 1e-8
    tol_zero: float = 1e-9
    tol_herm: float = 1e-8
    tol_proj: float = 1e-8
    tol_orth: float = 1e-8
    tol_residual: float = 1e-8


class ConfigPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tolerances: TolerancesPayload = Field(default_factory=TolerancesPayload)
    mode: Literal["auto", "singleton", "exhaustive"] = "auto"
    partition_cap: int = Field(default=10, ge=1)
    seed: int = Field(default=0, ge=0)
    trials: int = Field(default=100, ge=1)


class InfimumRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    operators: list[OperatorPayload] = Field(min_length=1)
    config: ConfigPayload = Field(default_factory=ConfigPayload)


class AtomPayload(BaseModel):
    value: float
    projection: OperatorPayload


class InfimumResponse(BaseModel):
    operator: OperatorPayload
    atoms: list[AtomPayload]
    mode_used: Literal["singleton", "exhaustive"]
    grid: list[float]
    tolerances: TolerancesPayload


class OrderCheckRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    a: OperatorPayload
    b: OperatorPayload
    config: ConfigPayload = Field(default_factory=ConfigPayload)


class PredicateResult(BaseModel):
    holds: bool
    residual: float


class OrderCheckResponse(BaseModel):
    numeric_leq: PredicateResult
    logic_leq_algebraic: PredicateResult
    logic_leq_spectral: PredicateResult
    tests_agree: bool


class MeasureRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    operators: list[OperatorPayload] = Field(min_length=1)
    set_spec: str
    config: ConfigPayload = Field(default_factory=ConfigPayload)


class MeasureResponse(BaseModel):
    projection: OperatorPayload
    branch: Literal["direct", "complement"]
    grid: list[float]


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    operators: list[OperatorPayload] = Field(min_length=1)
    config: ConfigPayload = Field(default_factory=ConfigPayload)
    perturbation: float = Field(default=0.0, ge=0.0)


class CheckPayload(BaseModel):
    name: str
    passed: bool
    residual: float
    detail: str


class VerdictResponse(BaseModel):
    passed: bool
    seed: int
    trials: int
    checks: list[CheckPayload]


class HealthResponse(BaseModel):
    status: str
    version: str
