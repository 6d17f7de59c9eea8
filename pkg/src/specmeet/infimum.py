"""Greatest lower bound of a Hermitian family under the logic order.

The infimum's spectral measure assigns to each 0-free set the lattice meet,
over all set partitions of the contained spectral atoms, of the blockwise
sums of joint eigenprojection meets.  Sets containing 0 go through the
complement.  The all-singletons partition refines every other partition and
refinement can only lower a blockwise sum, so at finite support the meet
over partitions equals the singleton sum; that fast path is the default,
with the exhaustive partition scan retained as an executable witness of the
defining formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import CapExceeded, DimensionMismatch, EmptyFamily, InvalidInput
from .linalg import (
    DEFAULT_TOLERANCES,
    HermitianOperator,
    Projection,
    Tolerances,
    meet_projections,
)
from .spectral import (
    BorelDescriptor,
    FiniteSpectralMeasure,
    joint_value_grid,
    measure_of,
)

DEFAULT_PARTITION_CAP = 10

MODES = ("singleton", "exhaustive")


def bell_number(n: int) -> int:
    """Number of set partitions of an n-element set."""
    if n < 0:
        raise InvalidInput("bell_number needs n >= 0")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


@dataclass(frozen=True)
class Partition:
    """A set partition: nonempty, pairwise-disjoint blocks of grid values."""

    blocks: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        seen: set[float] = set()
        for block in self.blocks:
            if not block:
                raise InvalidInput("partition blocks must be nonempty")
            for value in block:
                if value in seen:
                    raise InvalidInput("partition blocks must be disjoint")
                seen.add(value)

    @property
    def atom_set(self) -> frozenset:
        return frozenset(v for block in self.blocks for v in block)


def _restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """All restricted growth strings of length n, in lexicographic order."""
    if n == 0:
        yield []
        return
    code = [0] * n
    while True:
        yield code.copy()
        i = n - 1
        while i > 0:
            if code[i] <= max(code[:i]):
                code[i] += 1
                for j in range(i + 1, n):
                    code[j] = 0
                break
            i -= 1
        else:
            return


def enumerate_partitions(
    atoms, cap: int = DEFAULT_PARTITION_CAP
) -> Iterator[Partition]:
    """Yield every set partition of ``atoms`` exactly once.

    Enumeration order is lexicographic in the restricted growth string, with
    atoms taken in ascending order, so it is deterministic.  Raises
    CapExceeded (carrying the Bell count) when ``atoms`` has more than
    ``cap`` elements.
    """
    values = sorted(set(float(v) for v in atoms))
    if len(values) > cap:
        raise CapExceeded(len(values), bell_number(len(values)), cap)
    for code in _restricted_growth_strings(len(values)):
        count = max(code) + 1 if code else 0
        blocks: list[list[float]] = [[] for _ in range(count)]
        for value, label in zip(values, code):
            blocks[label].append(value)
        yield Partition(tuple(tuple(block) for block in blocks))


class _MeetMeasureScaffold:
    """Shared machinery: the joint grid and cached joint eigenspace meets."""

    def __init__(self, measures: Sequence[FiniteSpectralMeasure], tol: Tolerances, cap: int):
        measures = list(measures)
        if not measures:
            raise EmptyFamily("at least one measure is required")
        dims = {m.dim for m in measures}
        if len(dims) != 1:
            raise DimensionMismatch(f"mixed dimensions {sorted(dims)}")
        if cap < 1:
            raise InvalidInput("partition cap must be at least 1")
        self.measures = measures
        self.dim = dims.pop()
        self.tol = tol
        self.cap = cap
        self.grid = joint_value_grid(measures, tol)
        self._meet_cache: dict[frozenset, Projection] = {}

    def meet_for_block(self, block) -> Projection:
        """Meet over the family of each measure evaluated on the block values."""
        key = frozenset(block)
        cached = self._meet_cache.get(key)
        if cached is None:
            region = BorelDescriptor.finite(tuple(key))
            cached = meet_projections(
                [m.evaluate(region, self.tol) for m in self.measures], self.tol
            )
            self._meet_cache[key] = cached
        return cached

    def _singleton_sum(self, atoms: list[float]) -> Projection:
        total = np.zeros((self.dim, self.dim), dtype=complex)
        for value in atoms:
            total += self.meet_for_block((value,)).entries
        return Projection(total, self.tol)

    def _partition_meet(self, atoms: list[float]) -> Projection:
        candidates = []
        for partition in enumerate_partitions(atoms, self.cap):
            total = np.zeros((self.dim, self.dim), dtype=complex)
            for block in partition.blocks:
                total += self.meet_for_block(block).entries
            candidates.append(Projection(total, self.tol))
        if not candidates:
            return Projection.zero(self.dim)
        return meet_projections(candidates, self.tol)

    def projection_for(self, region: BorelDescriptor, mode: str) -> Projection:
        if mode not in MODES:
            raise InvalidInput(f"mode must be one of {MODES}, got {mode!r}")
        if region.contains(0.0, self.tol.tol_eig):
            inner = self.projection_for(region.complement(), mode)
            return inner.complement()
        atoms = [v for v in self.grid if region.contains(v, self.tol.tol_eig)]
        if mode == "singleton":
            return self._singleton_sum(atoms)
        return self._partition_meet(atoms)


def infimum_projection(
    family: Sequence[FiniteSpectralMeasure],
    region: BorelDescriptor,
    mode: str = "singleton",
    tol: Tolerances | None = None,
    cap: int = DEFAULT_PARTITION_CAP,
) -> Projection:
    """The family infimum's spectral projection on ``region``.

    For a 0-free region this is the meet over partitions of the contained
    grid atoms (``exhaustive``) or the provably equal all-singletons sum
    (``singleton``).  A region containing 0 evaluates as the complement of
    its complement's projection; the empty set gets the zero projection.
    """
    tol = tol or DEFAULT_TOLERANCES
    scaffold = _MeetMeasureScaffold(family, tol, cap)
    return scaffold.projection_for(region, mode)


@dataclass(frozen=True)
class InfimumResult:
    """Assembled infimum: the operator, its measure, and how it was built."""

    operator: HermitianOperator
    measure: FiniteSpectralMeasure
    mode_used: str
    grid: tuple[float, ...]


def assemble_infimum(
    family: Sequence[HermitianOperator],
    mode: str = "auto",
    tol: Tolerances | None = None,
    cap: int = DEFAULT_PARTITION_CAP,
) -> InfimumResult:
    """Greatest lower bound of ``family`` under the logic order.

    Integrates the constructed measure: the infimum is the sum of
    ``value * projection`` over the grid, with the 0-atom recovered by
    completeness.  Mode ``auto`` resolves to the singleton fast path;
    ``exhaustive`` is the verification route.
    """
    tol = tol or DEFAULT_TOLERANCES
    if mode == "auto":
        mode = "singleton"
    if mode not in MODES:
        raise InvalidInput(f"mode must be auto, singleton, or exhaustive, got {mode!r}")
    family = list(family)
    if not family:
        raise EmptyFamily("assemble_infimum needs at least one operator")
    measures = [measure_of(op, tol) for op in family]
    scaffold = _MeetMeasureScaffold(measures, tol, cap)

    dim = scaffold.dim
    atoms: list[tuple[float, Projection]] = []
    covered = np.zeros((dim, dim), dtype=complex)
    operator = np.zeros((dim, dim), dtype=complex)
    for value in scaffold.grid:
        proj = scaffold.projection_for(BorelDescriptor.finite((value,)), mode)
        if proj.rank == 0:
            continue
        atoms.append((value, proj))
        covered += proj.entries
        operator += value * proj.entries
    kernel = Projection(np.eye(dim, dtype=complex) - covered, tol)
    if kernel.rank > 0:
        atoms.append((0.0, kernel))
        atoms.sort(key=lambda pair: pair[0])

    return InfimumResult(
        operator=HermitianOperator(operator, tol),
        measure=FiniteSpectralMeasure(atoms, tol),
        mode_used=mode,
        grid=tuple(scaffold.grid),
    )
