"""Hermitian matrix arithmetic, clustered eigendecomposition, and projection primitives.

Scalars are complex throughout; real inputs are embedded with zero imaginary
parts.  All values are immutable after construction and every operation is a
pure function, so the module is safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EigenFailure,
    InvalidInput,
    NonHermitianInput,
)


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used by every operation.

    tol_eig is the eigenvalue clustering radius (relative to the operator
    norm); tol_rank the eigenvalue threshold for rank decisions; tol_zero the
    absolute radius around 0 inside which a spectral value is treated as 0.
    """

    tol_eig: float = 1e-9
    tol_rank: float = 1e-8
    tol_zero: float = 1e-9
    tol_herm: float = 1e-8
    tol_proj: float = 1e-8
    tol_orth: float = 1e-8
    tol_residual: float = 1e-8

    def __post_init__(self):
        for name in (
            "tol_eig",
            "tol_rank",
            "tol_zero",
            "tol_herm",
            "tol_proj",
            "tol_orth",
            "tol_residual",
        ):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0):
                raise InvalidInput(f"{name} must be strictly positive, got {value!r}")
        if self.tol_zero < self.tol_eig:
            raise InvalidInput(
                f"tol_zero ({self.tol_zero}) must be >= tol_eig ({self.tol_eig})"
            )


DEFAULT_TOLERANCES = Tolerances()


def _fro(mat: np.ndarray) -> float:
    return float(np.linalg.norm(mat))


class HermitianOperator:
    """An n-by-n complex Hermitian matrix.

    Construction symmetrizes the input when its Hermitian residual is within
    ``tol_herm`` (relative to the Frobenius norm) and rejects it otherwise.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries, tol: Tolerances | None = None):
        tol = tol or DEFAULT_TOLERANCES
        arr = np.asarray(entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidInput(f"expected a square matrix, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise InvalidInput("dimension must be at least 1")
        if not np.all(np.isfinite(arr)):
            raise InvalidInput("matrix entries must be finite")
        residual = _fro(arr - arr.conj().T)
        if residual > tol.tol_herm * max(1.0, _fro(arr)):
            raise NonHermitianInput(
                f"Hermitian residual {residual:.3e} exceeds tol_herm"
            )
        sym = (arr + arr.conj().T) / 2.0
        sym.setflags(write=False)
        self._entries = sym

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def dim(self) -> int:
        return self._entries.shape[0]

    def norm_fro(self) -> float:
        return _fro(self._entries)

    def norm_op(self) -> float:
        """Operator 2-norm, the largest absolute eigenvalue."""
        return float(np.abs(np.linalg.eigvalsh(self._entries)).max())

    def __add__(self, other: "HermitianOperator") -> "HermitianOperator":
        _check_same_dim(self, other)
        return HermitianOperator(self._entries + other._entries)

    def __sub__(self, other: "HermitianOperator") -> "HermitianOperator":
        _check_same_dim(self, other)
        return HermitianOperator(self._entries - other._entries)

    def __mul__(self, scalar: float) -> "HermitianOperator":
        return HermitianOperator(self._entries * float(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"

    @classmethod
    def zeros(cls, dim: int) -> "HermitianOperator":
        return cls(np.zeros((dim, dim), dtype=complex))


class Projection(HermitianOperator):
    """An orthogonal projection: Hermitian and idempotent within tol_proj."""

    __slots__ = ("_rank",)

    def __init__(self, entries, tol: Tolerances | None = None):
        tol = tol or DEFAULT_TOLERANCES
        super().__init__(entries, tol)
        mat = self._entries
        idem = _fro(mat @ mat - mat)
        if idem > tol.tol_proj * max(1.0, _fro(mat)):
            raise InvalidInput(f"idempotence residual {idem:.3e} exceeds tol_proj")
        trace = float(np.trace(mat).real)
        rank = round(trace)
        if abs(trace - rank) > tol.tol_proj * max(1.0, self.dim):
            raise InvalidInput(f"trace {trace!r} is not close to an integer rank")
        self._rank = int(rank)

    @property
    def rank(self) -> int:
        return self._rank

    @classmethod
    def zero(cls, dim: int) -> "Projection":
        return cls(np.zeros((dim, dim), dtype=complex))

    @classmethod
    def identity(cls, dim: int) -> "Projection":
        return cls(np.eye(dim, dtype=complex))

    @classmethod
    def from_basis(cls, basis: np.ndarray, dim: int | None = None) -> "Projection":
        """Projection onto the span of orthonormal columns ``basis``."""
        basis = np.asarray(basis, dtype=complex)
        if basis.size == 0:
            if dim is None:
                raise InvalidInput("empty basis needs an explicit dim")
            return cls.zero(dim)
        return cls(basis @ basis.conj().T)

    def complement(self) -> "Projection":
        return Projection(np.eye(self.dim, dtype=complex) - self._entries)


class Subspace:
    """An orthonormal basis carried as the range of a projection.

    ``basis`` has shape (dim, k); k may be zero.
    """

    __slots__ = ("_dim", "_basis")

    def __init__(self, dim: int, basis: np.ndarray, tol: Tolerances | None = None):
        tol = tol or DEFAULT_TOLERANCES
        basis = np.asarray(basis, dtype=complex).reshape(dim, -1)
        if basis.shape[0] != dim:
            raise InvalidInput("basis rows must match dim")
        gram = basis.conj().T @ basis
        if _fro(gram - np.eye(basis.shape[1])) > tol.tol_orth * max(1.0, basis.shape[1]):
            raise InvalidInput("basis columns are not orthonormal within tol_orth")
        basis.setflags(write=False)
        self._dim = dim
        self._basis = basis

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def basis(self) -> np.ndarray:
        return self._basis

    @property
    def dimension(self) -> int:
        """Number of basis vectors (the subspace dimension)."""
        return self._basis.shape[1]

    def projection(self, tol: Tolerances | None = None) -> Projection:
        if self.dimension == 0:
            return Projection.zero(self._dim)
        return Projection(self._basis @ self._basis.conj().T, tol)

    @classmethod
    def from_projection(cls, proj: Projection, tol: Tolerances | None = None) -> "Subspace":
        values, vectors = _eigh(proj.entries)
        keep = vectors[:, values > 0.5]
        return cls(proj.dim, keep, tol)


def _check_same_dim(*operands) -> int:
    dims = {op.dim for op in operands}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixed dimensions {sorted(dims)}")
    return dims.pop()


def _eigh(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc


def _cluster_sorted(values: np.ndarray, radius: float) -> list[tuple[int, int]]:
    """Group ascending values into runs whose consecutive gaps are <= radius."""
    groups = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > radius:
            groups.append((start, i))
            start = i
    return groups


def eigendecompose(
    op: HermitianOperator, tol: Tolerances | None = None
) -> list[tuple[float, Projection]]:
    """Spectral decomposition with eigenvalue clustering and zero snapping.

    Returns (value, projection) pairs with strictly increasing values.
    Eigenvalues closer than ``tol_eig * max(1, opnorm)`` are merged into one
    cluster spanning the merged eigenvectors; any cluster value within
    ``tol_zero`` of 0 is snapped to exactly 0.  The projections are mutually
    orthogonal and sum to the identity.
    """
    tol = tol or DEFAULT_TOLERANCES
    values, vectors = _eigh(op.entries)
    scale = max(1.0, float(np.abs(values).max())) if values.size else 1.0
    radius = tol.tol_eig * scale

    atoms: list[tuple[float, np.ndarray]] = []
    for start, stop in _cluster_sorted(values, radius):
        value = float(values[start:stop].mean())
        if abs(value) <= tol.tol_zero:
            value = 0.0
        block = vectors[:, start:stop]
        atoms.append((value, block @ block.conj().T))

    # Distinct clusters can both snap to 0 when tol_zero exceeds the
    # clustering radius; collapse them so the value list stays strict.
    zero_parts = [m for v, m in atoms if v == 0.0]
    if len(zero_parts) > 1:
        merged = sum(zero_parts[1:], zero_parts[0])
        atoms = [(v, m) for v, m in atoms if v != 0.0]
        atoms.append((0.0, merged))
        atoms.sort(key=lambda pair: pair[0])

    return [(value, Projection(mat, tol)) for value, mat in atoms]


def meet_projections(ps, tol: Tolerances | None = None) -> Projection:
    """Orthogonal projection onto the intersection of the input ranges.

    Computed in one shot as the kernel eigenspace of ``sum(I - P_i)``:
    eigenvectors with eigenvalue <= tol_rank span the common range.
    """
    tol = tol or DEFAULT_TOLERANCES
    ps = list(ps)
    if not ps:
        raise InvalidInput("meet_projections needs at least one projection")
    dim = _check_same_dim(*ps)
    deficiency = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(dim, dtype=complex)
    for p in ps:
        deficiency += eye - p.entries
    values, vectors = _eigh(deficiency)
    kernel = vectors[:, values <= tol.tol_rank]
    if kernel.shape[1] == 0:
        return Projection.zero(dim)
    return Projection(kernel @ kernel.conj().T, tol)


def is_subprojection(p: Projection, q: Projection, tol: Tolerances | None = None) -> bool:
    """True iff range(p) is contained in range(q)."""
    tol = tol or DEFAULT_TOLERANCES
    return subprojection_residual(p, q) <= tol.tol_residual


def subprojection_residual(p: Projection, q: Projection) -> float:
    """``|| q p - p ||_F / dim``; zero exactly when q dominates p."""
    dim = _check_same_dim(p, q)
    return _fro(q.entries @ p.entries - p.entries) / dim


def is_psd(op: HermitianOperator, tol: Tolerances | None = None) -> bool:
    """Membership in the positive cone: smallest eigenvalue >= -tol_rank * scale."""
    tol = tol or DEFAULT_TOLERANCES
    return psd_residual(op) <= tol.tol_rank


def psd_residual(op: HermitianOperator) -> float:
    """How far below zero the spectrum dips, relative to max(1, opnorm)."""
    values = _eigh(op.entries)[0]
    scale = max(1.0, float(np.abs(values).max()))
    return max(0.0, -float(values[0])) / scale
