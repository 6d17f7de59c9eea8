"""Batch command-line front-end.

Each subcommand builds the same request model the HTTP service accepts and
either runs the handler in-process (default) or posts it to a running
service (``--server``).  Output files are rendered by the canonical writer,
so both paths produce byte-identical results.

Exit codes: 0 success/true, 1 property false, 2 parse/validation error,
3 partition cap exceeded, 4 dimension mismatch, 5 the two logic-order tests
disagree.
"""

from __future__ import annotations

import argparse
import sys

from pydantic import ValidationError

from .errors import (
    CapExceeded,
    DimensionMismatch,
    EigenFailure,
    EmptyFamily,
    InvalidInput,
)
from .fileio import (
    RunConfig,
    load_operator_file,
    load_run_config,
    operator_payload,
    write_json_file,
)
from .schemas import (
    ConfigPayload,
    InfimumRequest,
    InfimumResponse,
    MeasureRequest,
    MeasureResponse,
    OperatorPayload,
    OrderCheckRequest,
    OrderCheckResponse,
    TolerancesPayload,
    VerdictResponse,
    VerifyRequest,
)
from .service import (
    compute_infimum,
    compute_measure,
    compute_order_check,
    compute_verdict,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_DIM = 4
EXIT_DISAGREE = 5


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specmeet",
        description="Infimum of Hermitian observables under the logic order.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, default_output: str):
        p.add_argument("--config", help="JSON config file (flags override it)")
        p.add_argument("--tol-eig", type=float, dest="tol_eig")
        p.add_argument("--tol-rank", type=float, dest="tol_rank")
        p.add_argument("--tol-zero", type=float, dest="tol_zero")
        p.add_argument(
            "--mode", choices=["auto", "singleton", "exhaustive"], default=None
        )
        p.add_argument("--partition-cap", type=int, dest="partition_cap")
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument(
            "--output", "-o", default=default_output, help="result file path"
        )
        p.add_argument(
            "--server", help="base URL of a running service, e.g. http://localhost:8000"
        )

    p_inf = sub.add_parser("inf", help="compute the infimum of a family")
    p_inf.add_argument("inputs", nargs="+", help="operator JSON files")
    common(p_inf, "infimum.json")

    p_check = sub.add_parser("check", help="compare two operators under both orders")
    p_check.add_argument("a", help="left operator file")
    p_check.add_argument("b", help="right operator file")
    common(p_check, "check.json")

    p_measure = sub.add_parser("measure", help="evaluate the joint measure on a set")
    p_measure.add_argument("inputs", nargs="+", help="operator JSON files")
    p_measure.add_argument(
        "--set", dest="set_spec", required=True, help="finite{v1,...} or cofinite{v1,...}"
    )
    common(p_measure, "measure.json")

    p_verify = sub.add_parser("verify", help="assemble an infimum and verify it")
    p_verify.add_argument("inputs", nargs="+", help="operator JSON files")
    p_verify.add_argument(
        "--perturb",
        type=float,
        default=0.0,
        help="testing aid: corrupt the candidate with a rank-1 bump of this size",
    )
    common(p_verify, "verdict.json")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    overrides = {
        "tol_eig": args.tol_eig,
        "tol_rank": args.tol_rank,
        "tol_zero": args.tol_zero,
        "mode": args.mode,
        "partition_cap": args.partition_cap,
        "seed": args.seed,
        "trials": args.trials,
    }
    return load_run_config(args.config, overrides)


def _config_payload(config: RunConfig) -> ConfigPayload:
    return ConfigPayload(
        tolerances=TolerancesPayload(
            tol_eig=config.tolerances.tol_eig,
            tol_rank=config.tolerances.tol_rank,
            tol_zero=config.tolerances.tol_zero,
            tol_herm=config.tolerances.tol_herm,
            tol_proj=config.tolerances.tol_proj,
            tol_orth=config.tolerances.tol_orth,
            tol_residual=config.tolerances.tol_residual,
        ),
        mode=config.mode,
        partition_cap=config.partition_cap,
        seed=config.seed,
        trials=config.trials,
    )


def _operator_payload_from_file(path, tol) -> OperatorPayload:
    return OperatorPayload(**operator_payload(load_operator_file(path, tol)))


_REMOTE_ERRORS = {
    "parse_error": InvalidInput,
    "non_hermitian": InvalidInput,
    "empty_family": EmptyFamily,
    "cap_exceeded": CapExceeded,
    "dimension_mismatch": DimensionMismatch,
    "eigen_failure": EigenFailure,
}


def _post_remote(server: str, path: str, payload: dict, response_model):
    import httpx

    response = httpx.post(server.rstrip("/") + path, json=payload, timeout=300.0)
    if response.status_code >= 400:
        detail = {}
        try:
            detail = response.json().get("detail", {})
        except ValueError:
            pass
        if isinstance(detail, dict) and detail.get("code") in _REMOTE_ERRORS:
            klass = _REMOTE_ERRORS[detail["code"]]
            if klass is CapExceeded:
                raise CapExceeded(0, int(detail.get("required", 0)), 0)
            raise klass(detail.get("message", response.text))
        raise InvalidInput(f"server error {response.status_code}: {response.text}")
    return response_model(**response.json())


def _dispatch(args, request, handler, path, response_model):
    if args.server:
        return _post_remote(
            args.server, path, request.model_dump(exclude_none=True), response_model
        )
    return handler(request)


def _write_response(args, model) -> None:
    write_json_file(args.output, model.model_dump(exclude_none=True))


def cmd_inf(args) -> int:
    config = _run_config(args)
    operators = [
        _operator_payload_from_file(p, config.tolerances) for p in args.inputs
    ]
    request = InfimumRequest(operators=operators, config=_config_payload(config))
    response = _dispatch(args, request, compute_infimum, "/v1/infimum", InfimumResponse)
    _write_response(args, response)
    values = [atom.value for atom in response.atoms]
    print(
        f"infimum of {len(operators)} operator(s) written to {args.output} "
        f"(mode={response.mode_used}, atom values={values})"
    )
    return EXIT_OK


def cmd_check(args) -> int:
    config = _run_config(args)
    request = OrderCheckRequest(
        a=_operator_payload_from_file(args.a, config.tolerances),
        b=_operator_payload_from_file(args.b, config.tolerances),
        config=_config_payload(config),
    )
    response = _dispatch(
        args, request, compute_order_check, "/v1/order-check", OrderCheckResponse
    )
    _write_response(args, response)
    algebraic = response.logic_leq_algebraic.holds
    spectral = response.logic_leq_spectral.holds
    print(
        f"numeric_leq={response.numeric_leq.holds} "
        f"logic_leq_algebraic={algebraic} logic_leq_spectral={spectral} "
        f"-> {args.output}"
    )
    if algebraic != spectral:
        print("warning: the two logic-order tests disagree (tolerance boundary)")
        return EXIT_DISAGREE
    return EXIT_OK if algebraic else EXIT_FALSE


def cmd_measure(args) -> int:
    config = _run_config(args)
    operators = [
        _operator_payload_from_file(p, config.tolerances) for p in args.inputs
    ]
    request = MeasureRequest(
        operators=operators, set_spec=args.set_spec, config=_config_payload(config)
    )
    response = _dispatch(args, request, compute_measure, "/v1/measure", MeasureResponse)
    _write_response(args, response)
    print(
        f"measure of {args.set_spec} written to {args.output} "
        f"(branch={response.branch})"
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    config = _run_config(args)
    operators = [
        _operator_payload_from_file(p, config.tolerances) for p in args.inputs
    ]
    if args.perturb < 0:
        raise InvalidInput("--perturb must be nonnegative")
    request = VerifyRequest(
        operators=operators,
        config=_config_payload(config),
        perturbation=args.perturb,
    )
    response = _dispatch(args, request, compute_verdict, "/v1/verify", VerdictResponse)
    _write_response(args, response)
    failing = [c.name for c in response.checks if not c.passed]
    status = "passed" if response.passed else f"FAILED ({', '.join(failing)})"
    print(f"verification {status}; verdict written to {args.output}")
    return EXIT_OK if response.passed else EXIT_FALSE


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "inf": cmd_inf,
        "check": cmd_check,
        "measure": cmd_measure,
        "verify": cmd_verify,
        "serve": cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIM
    except (InvalidInput, EmptyFamily) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"error: invalid request ({exc.error_count()} issues)", file=sys.stderr)
        return EXIT_PARSE
    except EigenFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
