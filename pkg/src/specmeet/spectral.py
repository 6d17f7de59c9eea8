"""Finite spectral measures and finitely representable Borel sets.

With finite spectra every measure value is determined by which atoms a set
contains and whether it contains 0, so sets are restricted to finite or
cofinite collections of reals.  That subclass is closed under complement and
exactly representable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, EmptyFamily, InvalidInput
from .linalg import (
    DEFAULT_TOLERANCES,
    HermitianOperator,
    Projection,
    Tolerances,
    _check_same_dim,
    _cluster_sorted,
    eigendecompose,
)

_KINDS = ("finite", "cofinite")


@dataclass(frozen=True)
class BorelDescriptor:
    """A finite or cofinite set of reals.

    ``values`` are the members when finite and the excluded points when
    cofinite.  Double complement returns the identical descriptor.
    """

    kind: str
    values: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidInput(f"kind must be one of {_KINDS}, got {self.kind!r}")
        vals = tuple(sorted(float(v) for v in self.values))
        for v in vals:
            if not np.isfinite(v):
                raise InvalidInput("descriptor values must be finite reals")
        for a, b in zip(vals, vals[1:]):
            if b - a <= DEFAULT_TOLERANCES.tol_eig:
                raise InvalidInput(
                    f"descriptor values {a!r} and {b!r} are duplicates within tol_eig"
                )
        object.__setattr__(self, "values", vals)

    @classmethod
    def finite(cls, values=()) -> "BorelDescriptor":
        return cls("finite", tuple(values))

    @classmethod
    def cofinite(cls, values=()) -> "BorelDescriptor":
        return cls("cofinite", tuple(values))

    @classmethod
    def real_line(cls) -> "BorelDescriptor":
        return cls("cofinite", ())

    @classmethod
    def empty(cls) -> "BorelDescriptor":
        return cls("finite", ())

    def complement(self) -> "BorelDescriptor":
        other = "cofinite" if self.kind == "finite" else "finite"
        return BorelDescriptor(other, self.values)

    def contains(self, x: float, tol_eig: float = DEFAULT_TOLERANCES.tol_eig) -> bool:
        """Membership of ``x``, testing listed values within tol_eig."""
        near = any(abs(x - v) <= tol_eig for v in self.values)
        return near if self.kind == "finite" else not near

    def __str__(self):
        body = ",".join(format(v, "g") for v in self.values)
        return f"{self.kind}{{{body}}}"


class FiniteSpectralMeasure:
    """A projection-valued measure with finitely many atoms.

    Atoms are (value, projection) pairs with strictly increasing values,
    pairwise orthogonal projections, and total equal to the identity.
    """

    __slots__ = ("_dim", "_atoms")

    def __init__(self, atoms, tol: Tolerances | None = None):
        tol = tol or DEFAULT_TOLERANCES
        atoms = tuple((float(v), p) for v, p in atoms)
        if not atoms:
            raise InvalidInput("a spectral measure needs at least one atom")
        dim = _check_same_dim(*(p for _, p in atoms))
        values = [v for v, _ in atoms]
        for a, b in zip(values, values[1:]):
            if b <= a:
                raise InvalidInput("atom values must be strictly increasing")
        if sum(1 for v in values if v == 0.0) > 1:
            raise InvalidInput("at most one atom may sit at 0")
        total = np.zeros((dim, dim), dtype=complex)
        for i, (_, p) in enumerate(atoms):
            total += p.entries
            for _, q in atoms[i + 1 :]:
                if float(np.linalg.norm(p.entries @ q.entries)) > tol.tol_proj:
                    raise InvalidInput("atom projections are not pairwise orthogonal")
        if float(np.linalg.norm(total - np.eye(dim))) > tol.tol_proj * max(1.0, dim):
            raise InvalidInput("atom projections do not sum to the identity")
        self._dim = dim
        self._atoms = atoms

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def atoms(self) -> tuple[tuple[float, Projection], ...]:
        return self._atoms

    def evaluate(self, region: BorelDescriptor, tol: Tolerances | None = None) -> Projection:
        """Sum of the atom projections whose value lies in ``region``."""
        tol = tol or DEFAULT_TOLERANCES
        picked = [
            p.entries for v, p in self._atoms if region.contains(v, tol.tol_eig)
        ]
        if not picked:
            return Projection.zero(self._dim)
        return Projection(sum(picked), tol)

    def support_nonzero(self) -> list[float]:
        """Strictly increasing atom values, excluding an atom at exactly 0."""
        return [v for v, _ in self._atoms if v != 0.0]

    def reconstruct(self) -> np.ndarray:
        """The operator this measure integrates to, ``sum(value * projection)``."""
        out = np.zeros((self._dim, self._dim), dtype=complex)
        for v, p in self._atoms:
            out += v * p.entries
        return out

    def __repr__(self):
        values = [v for v, _ in self._atoms]
        return f"FiniteSpectralMeasure(dim={self._dim}, values={values})"


def measure_of(op: HermitianOperator, tol: Tolerances | None = None) -> FiniteSpectralMeasure:
    """The spectral measure of ``op``: its clustered eigendecomposition.

    Every Hermitian matrix decomposes completely, so the atoms always sum to
    the identity; a 0-atom appears exactly when an eigenvalue cluster snapped
    to 0.
    """
    tol = tol or DEFAULT_TOLERANCES
    return FiniteSpectralMeasure(eigendecompose(op, tol), tol)


def joint_value_grid(measures, tol: Tolerances | None = None) -> list[float]:
    """Clustered union of the nonzero support values across a family.

    Values within tol_eig of each other are identified; each cluster is
    represented by its mean.  The result is strictly increasing.
    """
    tol = tol or DEFAULT_TOLERANCES
    measures = list(measures)
    if not measures:
        raise EmptyFamily("joint_value_grid needs at least one measure")
    dims = {m.dim for m in measures}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixed dimensions {sorted(dims)}")
    collected = np.array(
        sorted(v for m in measures for v in m.support_nonzero()), dtype=float
    )
    if collected.size == 0:
        return []
    return [
        float(collected[start:stop].mean())
        for start, stop in _cluster_sorted(collected, tol.tol_eig)
    ]
