"""Infimum of Hermitian observables under the logic order.

The toolkit evaluates the greatest lower bound of a finite family of
Hermitian matrices with respect to the logic order (A precedes B when the
witness C = B - A annihilates A), by constructing the family's joint
spectral measure and integrating it.  Independent order-theoretic oracles
verify each result.
"""

__version__ = "0.1.0"

from .errors import (
    CapExceeded,
    DimensionMismatch,
    EigenFailure,
    EmptyFamily,
    InvalidInput,
    NonHermitianInput,
    SpecmeetError,
)
from .infimum import (
    DEFAULT_PARTITION_CAP,
    InfimumResult,
    Partition,
    assemble_infimum,
    bell_number,
    enumerate_partitions,
    infimum_projection,
)
from .linalg import (
    DEFAULT_TOLERANCES,
    HermitianOperator,
    Projection,
    Subspace,
    Tolerances,
    eigendecompose,
    is_psd,
    is_subprojection,
    meet_projections,
)
from .oracle import (
    CheckResult,
    LowerBoundSpec,
    Verdict,
    generate_lower_bound,
    perturbed_candidate,
    verify_infimum,
)
from .order import (
    is_logic_leq,
    is_logic_leq_algebraic,
    is_logic_leq_spectral,
    is_numeric_leq,
)
from .spectral import (
    BorelDescriptor,
    FiniteSpectralMeasure,
    joint_value_grid,
    measure_of,
)

__all__ = [
    "BorelDescriptor",
    "CapExceeded",
    "CheckResult",
    "DEFAULT_PARTITION_CAP",
    "DEFAULT_TOLERANCES",
    "DimensionMismatch",
    "EigenFailure",
    "EmptyFamily",
    "FiniteSpectralMeasure",
    "HermitianOperator",
    "InfimumResult",
    "InvalidInput",
    "LowerBoundSpec",
    "NonHermitianInput",
    "Partition",
    "Projection",
    "SpecmeetError",
    "Subspace",
    "Tolerances",
    "Verdict",
    "assemble_infimum",
    "bell_number",
    "eigendecompose",
    "enumerate_partitions",
    "generate_lower_bound",
    "infimum_projection",
    "is_logic_leq",
    "is_logic_leq_algebraic",
    "is_logic_leq_spectral",
    "is_numeric_leq",
    "is_psd",
    "is_subprojection",
    "joint_value_grid",
    "measure_of",
    "meet_projections",
    "perturbed_candidate",
    "verify_infimum",
]
