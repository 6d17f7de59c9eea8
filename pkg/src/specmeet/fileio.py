"""Flat-file formats and deterministic serialization.

Operator files are JSON objects with explicit ``dim``, ``real``, and optional
``imag`` (row-major); floats are written with 17 significant digits so a
double round-trips losslessly and identical inputs produce byte-identical
output files.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InvalidInput
from .infimum import DEFAULT_PARTITION_CAP, InfimumResult
from .linalg import HermitianOperator, Tolerances
from .spectral import BorelDescriptor

_SET_SPEC_RE = re.compile(r"^\s*(finite|cofinite)\s*\{([^{}]*)\}\s*$")

_TOLERANCE_FIELDS = (
    "tol_eig",
    "tol_rank",
    "tol_zero",
    "tol_herm",
    "tol_proj",
    "tol_orth",
    "tol_residual",
)


@dataclass(frozen=True)
class RunConfig:
    """Everything a command run depends on besides its input operators."""

    tolerances: Tolerances = field(default_factory=Tolerances)
    mode: str = "auto"
    partition_cap: int = DEFAULT_PARTITION_CAP
    seed: int = 0
    trials: int = 100

    def __post_init__(self):
        if self.mode not in ("auto", "singleton", "exhaustive"):
            raise InvalidInput(f"mode must be auto, singleton, or exhaustive, got {self.mode!r}")
        if not isinstance(self.partition_cap, int) or self.partition_cap < 1:
            raise InvalidInput("partition_cap must be a positive integer")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise InvalidInput("seed must be a nonnegative integer")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise InvalidInput("trials must be a positive integer")


def _format_float(value: float) -> str:
    if not math.isfinite(value):
        raise InvalidInput("cannot serialize non-finite float")
    text = format(float(value), ".17g")
    if "." not in text and "e" not in text:
        # keep a float marker so JSON round-trips the type (and -0.0's sign)
        text += ".0"
    return text


def _emit(value, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            out.append(f"{pad}  {json.dumps(str(key))}: ")
            _emit(item, indent + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        if not any(isinstance(item, (dict, list, tuple)) for item in value):
            # scalar-only lists (matrix rows, grids) stay on one line
            out.append("[")
            for i, item in enumerate(value):
                _emit(item, indent, out)
                if i < len(value) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for i, item in enumerate(value):
            out.append(pad + "  ")
            _emit(item, indent + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(_format_float(float(value)))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif value is None:
        out.append("null")
    else:
        raise InvalidInput(f"cannot serialize value of type {type(value).__name__}")


def canonical_json(payload) -> str:
    """Render ``payload`` with fixed field order and 17-digit floats."""
    out: list[str] = []
    _emit(payload, 0, out)
    out.append("\n")
    return "".join(out)


def write_json_file(path, payload) -> None:
    Path(path).write_text(canonical_json(payload), encoding="utf-8")


def _matrix_rows(raw, dim: int, name: str) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    if arr.shape != (dim, dim):
        raise InvalidInput(f"{name} must be a {dim}x{dim} array, got shape {arr.shape}")
    return arr


def operator_from_arrays(
    dim: int, real, imag=None, tol: Tolerances | None = None
) -> HermitianOperator:
    """Build a validated operator from row-major real/imag parts."""
    if not isinstance(dim, int) or dim < 1:
        raise InvalidInput(f"dim must be a positive integer, got {dim!r}")
    try:
        mat = _matrix_rows(real, dim, "real").astype(complex)
        if imag is not None:
            mat = mat + 1j * _matrix_rows(imag, dim, "imag")
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad matrix entries: {exc}") from exc
    return HermitianOperator(mat, tol)


def load_operator_file(path, tol: Tolerances | None = None) -> HermitianOperator:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidInput(f"{path}: cannot read ({exc})") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict):
        raise InvalidInput(f"{path}: expected a JSON object")
    missing = {"dim", "real"} - payload.keys()
    if missing:
        raise InvalidInput(f"{path}: missing fields {sorted(missing)}")
    try:
        return operator_from_arrays(
            payload["dim"], payload["real"], payload.get("imag"), tol
        )
    except InvalidInput as exc:
        raise type(exc)(f"{path}: {exc}") from exc


def operator_payload(op: HermitianOperator) -> dict:
    """Operator file content; ``imag`` is omitted when identically zero."""
    entries = op.entries
    payload = {
        "dim": op.dim,
        "real": [[float(x) for x in row] for row in entries.real],
    }
    if np.any(entries.imag != 0.0):
        payload["imag"] = [[float(x) for x in row] for row in entries.imag]
    return payload


def tolerances_payload(tol: Tolerances) -> dict:
    return {name: float(getattr(tol, name)) for name in _TOLERANCE_FIELDS}


def result_payload(result: InfimumResult, tol: Tolerances) -> dict:
    return {
        "operator": operator_payload(result.operator),
        "atoms": [
            {"value": float(value), "projection": operator_payload(proj)}
            for value, proj in result.measure.atoms
        ],
        "mode_used": result.mode_used,
        "grid": [float(v) for v in result.grid],
        "tolerances": tolerances_payload(tol),
    }


def parse_set_spec(text: str, tol: Tolerances | None = None) -> BorelDescriptor:
    """Parse ``finite{v1,v2,...}`` / ``cofinite{...}``; whitespace is free."""
    match = _SET_SPEC_RE.match(text)
    if not match:
        raise InvalidInput(
            f"malformed set spec {text!r}: expected finite{{...}} or cofinite{{...}}"
        )
    kind, body = match.group(1), match.group(2).strip()
    values = []
    if body:
        for token in body.split(","):
            token = token.strip()
            try:
                values.append(float(token))
            except ValueError as exc:
                raise InvalidInput(f"bad value {token!r} in set spec") from exc
            if not math.isfinite(values[-1]):
                raise InvalidInput(f"set spec values must be finite, got {token!r}")
    try:
        return BorelDescriptor(kind, tuple(values))
    except InvalidInput as exc:
        raise InvalidInput(f"bad set spec {text!r}: {exc}") from exc


def _tolerances_from_dict(raw: dict, base: Tolerances) -> Tolerances:
    unknown = raw.keys() - set(_TOLERANCE_FIELDS)
    if unknown:
        raise InvalidInput(f"unknown tolerance fields {sorted(unknown)}")
    merged = {name: getattr(base, name) for name in _TOLERANCE_FIELDS}
    for name, value in raw.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise InvalidInput(f"tolerance {name} must be a number")
        merged[name] = float(value)
    return Tolerances(**merged)


def load_run_config(config_path=None, overrides: dict | None = None) -> RunConfig:
    """Resolve configuration: flag overrides beat the file, which beats defaults."""
    base = RunConfig()
    if config_path is not None:
        path = Path(config_path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise InvalidInput(f"{path}: cannot read ({exc})") from exc
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"{path}: not valid JSON ({exc})") from exc
        if not isinstance(raw, dict):
            raise InvalidInput(f"{path}: expected a JSON object")
        unknown = raw.keys() - {"tolerances", "mode", "partition_cap", "seed", "trials"}
        if unknown:
            raise InvalidInput(f"{path}: unknown config fields {sorted(unknown)}")
        tolerances = base.tolerances
        if "tolerances" in raw:
            if not isinstance(raw["tolerances"], dict):
                raise InvalidInput(f"{path}: tolerances must be an object")
            tolerances = _tolerances_from_dict(raw["tolerances"], base.tolerances)
        base = RunConfig(
            tolerances=tolerances,
            mode=raw.get("mode", base.mode),
            partition_cap=raw.get("partition_cap", base.partition_cap),
            seed=raw.get("seed", base.seed),
            trials=raw.get("trials", base.trials),
        )
    if overrides:
        tol_overrides = {
            key: value
            for key, value in overrides.items()
            if key in _TOLERANCE_FIELDS and value is not None
        }
        tolerances = (
            _tolerances_from_dict(tol_overrides, base.tolerances)
            if tol_overrides
            else base.tolerances
        )
        base = RunConfig(
            tolerances=tolerances,
            mode=overrides.get("mode") or base.mode,
            partition_cap=_override_int(overrides.get("partition_cap"), base.partition_cap),
            seed=_override_int(overrides.get("seed"), base.seed),
            trials=_override_int(overrides.get("trials"), base.trials),
        )
    return base


def _override_int(value, fallback: int) -> int:
    if value is None:
        return fallback
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInput(f"expected an integer, got {value!r}")
    return value
