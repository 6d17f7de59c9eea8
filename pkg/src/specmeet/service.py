"""Stateless HTTP front-end wrapping the core library.

Every endpoint is a pure function of its request body, so the app can serve
any number of concurrent clients.  The handler functions are also called
directly by the CLI, which keeps the two entry points byte-identical.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import __version__
from .errors import (
    CapExceeded,
    DimensionMismatch,
    EigenFailure,
    EmptyFamily,
    InvalidInput,
    SpecmeetError,
)
from .fileio import (
    RunConfig,
    operator_from_arrays,
    operator_payload,
    parse_set_spec,
    result_payload,
)
from .infimum import assemble_infimum, infimum_projection
from .linalg import HermitianOperator, Tolerances
from .oracle import perturbed_candidate, verify_infimum
from .order import (
    is_logic_leq_algebraic,
    is_logic_leq_spectral,
    is_numeric_leq,
    logic_leq_algebraic_residual,
    logic_leq_spectral_residual,
    numeric_leq_residual,
)
from .schemas import (
    CheckPayload,
    ConfigPayload,
    HealthResponse,
    InfimumRequest,
    InfimumResponse,
    MeasureRequest,
    MeasureResponse,
    OperatorPayload,
    OrderCheckRequest,
    OrderCheckResponse,
    PredicateResult,
    VerdictResponse,
    VerifyRequest,
)
from .spectral import joint_value_grid, measure_of


def config_from_payload(payload: ConfigPayload) -> RunConfig:
    return RunConfig(
        tolerances=Tolerances(**payload.tolerances.model_dump()),
        mode=payload.mode,
        partition_cap=payload.partition_cap,
        seed=payload.seed,
        trials=payload.trials,
    )


def _operator(payload: OperatorPayload, tol: Tolerances) -> HermitianOperator:
    return operator_from_arrays(payload.dim, payload.real, payload.imag, tol)


def compute_infimum(request: InfimumRequest) -> InfimumResponse:
    config = config_from_payload(request.config)
    family = [_operator(p, config.tolerances) for p in request.operators]
    result = assemble_infimum(
        family, mode=config.mode, tol=config.tolerances, cap=config.partition_cap
    )
    return InfimumResponse(**result_payload(result, config.tolerances))


def compute_order_check(request: OrderCheckRequest) -> OrderCheckResponse:
    config = config_from_payload(request.config)
    tol = config.tolerances
    a = _operator(request.a, tol)
    b = _operator(request.b, tol)
    algebraic = is_logic_leq_algebraic(a, b, tol)
    spectral = is_logic_leq_spectral(a, b, tol)
    return OrderCheckResponse(
        numeric_leq=PredicateResult(
            holds=is_numeric_leq(a, b, tol), residual=numeric_leq_residual(a, b)
        ),
        logic_leq_algebraic=PredicateResult(
            holds=algebraic, residual=logic_leq_algebraic_residual(a, b)
        ),
        logic_leq_spectral=PredicateResult(
            holds=spectral, residual=logic_leq_spectral_residual(a, b, tol)
        ),
        tests_agree=algebraic == spectral,
    )


def compute_measure(request: MeasureRequest) -> MeasureResponse:
    config = config_from_payload(request.config)
    tol = config.tolerances
    region = parse_set_spec(request.set_spec, tol)
    family = [_operator(p, tol) for p in request.operators]
    measures = [measure_of(op, tol) for op in family]
    mode = "singleton" if config.mode == "auto" else config.mode
    projection = infimum_projection(
        measures, region, mode=mode, tol=tol, cap=config.partition_cap
    )
    branch = "complement" if region.contains(0.0, tol.tol_eig) else "direct"
    return MeasureResponse(
        projection=OperatorPayload(**operator_payload(projection)),
        branch=branch,
        grid=joint_value_grid(measures, tol),
    )


def compute_verdict(request: VerifyRequest) -> VerdictResponse:
    config = config_from_payload(request.config)
    tol = config.tolerances
    family = [_operator(p, tol) for p in request.operators]
    result = assemble_infimum(
        family, mode=config.mode, tol=tol, cap=config.partition_cap
    )
    candidate = result.operator
    if request.perturbation > 0.0:
        candidate = perturbed_candidate(
            candidate, request.perturbation, config.seed, tol
        )
    verdict = verify_infimum(
        family, candidate, trials=config.trials, seed=config.seed, tol=tol
    )
    return VerdictResponse(
        passed=verdict.passed,
        seed=verdict.seed,
        trials=verdict.trials,
        checks=[
            CheckPayload(
                name=c.name, passed=c.passed, residual=c.residual, detail=c.detail
            )
            for c in verdict.checks
        ],
    )


_ERROR_STATUS = {
    CapExceeded: (422, "cap_exceeded"),
    DimensionMismatch: (400, "dimension_mismatch"),
    EmptyFamily: (422, "empty_family"),
    InvalidInput: (422, "parse_error"),
    EigenFailure: (500, "eigen_failure"),
}


def _error_response(exc: SpecmeetError) -> JSONResponse:
    for klass, (status, code) in _ERROR_STATUS.items():
        if isinstance(exc, klass):
            detail = {"code": code, "message": str(exc)}
            if isinstance(exc, CapExceeded):
                detail["required"] = exc.required
            return JSONResponse(status_code=status, content={"detail": detail})
    return JSONResponse(
        status_code=500, content={"detail": {"code": "internal", "message": str(exc)}}
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="specmeet",
        description="Infimum of Hermitian observables under the logic order",
        version=__version__,
    )

    @app.exception_handler(SpecmeetError)
    async def handle_domain_error(_request, exc: SpecmeetError):
        return _error_response(exc)

    @app.get("/v1/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/v1/infimum", response_model=InfimumResponse)
    def infimum(request: InfimumRequest) -> InfimumResponse:
        return compute_infimum(request)

    @app.post("/v1/order-check", response_model=OrderCheckResponse)
    def order_check(request: OrderCheckRequest) -> OrderCheckResponse:
        return compute_order_check(request)

    @app.post("/v1/measure", response_model=MeasureResponse)
    def measure(request: MeasureRequest) -> MeasureResponse:
        return compute_measure(request)

    @app.post("/v1/verify", response_model=VerdictResponse)
    def verify(request: VerifyRequest) -> VerdictResponse:
        return compute_verdict(request)

    return app


app = create_app()
