"""Decision procedures for the numeric and logic orders on Hermitian operators.

The logic order is decided two independent ways: algebraically through the
forced witness C = B - A (A precedes B iff A*C vanishes), and spectrally
through domination of every nonzero eigenprojection.  Near the tolerance
boundary the two tests can disagree on adversarial inputs; callers surface
both verdicts rather than tie-breaking.
"""

from __future__ import annotations

from .linalg import (
    DEFAULT_TOLERANCES,
    HermitianOperator,
    Tolerances,
    _check_same_dim,
    _fro,
    psd_residual,
    subprojection_residual,
)
from .spectral import BorelDescriptor, measure_of


def numeric_leq_residual(a: HermitianOperator, b: HermitianOperator) -> float:
    """How far b - a is from positive semidefinite (0 when it is PSD)."""
    _check_same_dim(a, b)
    return psd_residual(b - a)


def is_numeric_leq(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances | None = None
) -> bool:
    """a <= b iff b - a is positive semidefinite."""
    tol = tol or DEFAULT_TOLERANCES
    return numeric_leq_residual(a, b) <= tol.tol_rank


def logic_leq_algebraic_residual(a: HermitianOperator, b: HermitianOperator) -> float:
    """Relative size of a @ (b - a); zero exactly when a precedes b."""
    _check_same_dim(a, b)
    witness = b.entries - a.entries
    product = _fro(a.entries @ witness)
    return product / max(1.0, _fro(a.entries) * _fro(witness))


def is_logic_leq_algebraic(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances | None = None
) -> bool:
    """Logic order via the forced witness: with C = b - a, test a @ C = 0."""
    tol = tol or DEFAULT_TOLERANCES
    return logic_leq_algebraic_residual(a, b) <= tol.tol_residual


def logic_leq_spectral_residual(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances | None = None
) -> float:
    """Worst subprojection residual over the nonzero eigenprojections of a.

    Both measures are finitely additive, so domination on singletons implies
    domination on every 0-free set; only singleton checks are needed.
    """
    tol = tol or DEFAULT_TOLERANCES
    _check_same_dim(a, b)
    measure_a = measure_of(a, tol)
    measure_b = measure_of(b, tol)
    worst = 0.0
    for value, proj in measure_a.atoms:
        if value == 0.0:
            continue
        dominating = measure_b.evaluate(BorelDescriptor.finite((value,)), tol)
        worst = max(worst, subprojection_residual(proj, dominating))
    return worst


def is_logic_leq_spectral(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances | None = None
) -> bool:
    """Logic order via spectral domination of every nonzero eigenprojection."""
    tol = tol or DEFAULT_TOLERANCES
    return logic_leq_spectral_residual(a, b, tol) <= tol.tol_residual


def is_logic_leq(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances | None = None
) -> bool:
    """Conjunction of the algebraic and spectral logic-order tests."""
    tol = tol or DEFAULT_TOLERANCES
    return is_logic_leq_algebraic(a, b, tol) and is_logic_leq_spectral(a, b, tol)
