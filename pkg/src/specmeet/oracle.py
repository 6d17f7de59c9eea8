"""Independent verification of computed infima.

Common lower bounds are generated constructively inside the joint eigenspace
meets (the feasible set has measure zero in operator space, so rejection
sampling would only ever find 0), then replayed against the candidate.  All
randomness is seeded and recorded so a verdict can be reproduced exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyFamily, InvalidInput
from .infimum import DEFAULT_PARTITION_CAP, _MeetMeasureScaffold
from .linalg import (
    DEFAULT_TOLERANCES,
    HermitianOperator,
    Projection,
    Subspace,
    Tolerances,
    _check_same_dim,
    _fro,
)
from .order import (
    logic_leq_algebraic_residual,
    logic_leq_spectral_residual,
)
from .spectral import BorelDescriptor, measure_of

_MAX_REGION_SAMPLES = 24
_MAX_PAIR_SAMPLES = 48


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    detail: str


@dataclass(frozen=True)
class Verdict:
    """Structured verification report; ``passed`` is the conjunction of checks."""

    passed: bool
    checks: tuple[CheckResult, ...]
    seed: int
    trials: int


@dataclass(frozen=True)
class LowerBoundSpec:
    """Recipe for a common lower bound: grid values and subspace dimensions.

    Each dimension is bounded by the rank of the joint eigenspace meet at the
    corresponding value; zero dimensions drop the value.
    """

    values: tuple[float, ...]
    subspace_dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(set(self.values)):
            raise InvalidInput("lower bound values must be distinct")
        if len(self.values) != len(self.subspace_dims):
            raise InvalidInput("values and subspace_dims must align")
        if any(d < 0 for d in self.subspace_dims):
            raise InvalidInput("subspace dimensions must be nonnegative")


def _random_subspace_inside(
    meet: Projection, k: int, rng: np.random.Generator, tol: Tolerances
) -> Subspace:
    """Haar-like random k-dimensional subspace of the meet's range."""
    carrier = Subspace.from_projection(meet, tol)
    mix = rng.standard_normal((carrier.dimension, k)) + 1j * rng.standard_normal(
        (carrier.dimension, k)
    )
    q, _ = np.linalg.qr(mix)
    return Subspace(meet.dim, carrier.basis @ q[:, :k], tol)


def generate_lower_bound(
    family: Sequence[HermitianOperator],
    seed: int,
    tol: Tolerances | None = None,
) -> HermitianOperator:
    """A random common lower bound of ``family`` under the logic order.

    Draws a subset of the joint grid and, per chosen value, a random subspace
    of the joint eigenspace meet; the result is the weighted sum of the
    subspace projections.  When every meet is zero this returns the zero
    operator, which is the only lower bound left.
    """
    tol = tol or DEFAULT_TOLERANCES
    family = list(family)
    if not family:
        raise EmptyFamily("generate_lower_bound needs at least one operator")
    measures = [measure_of(op, tol) for op in family]
    scaffold = _MeetMeasureScaffold(measures, tol, DEFAULT_PARTITION_CAP)
    rng = np.random.default_rng(seed)

    chosen: list[tuple[float, int, Projection]] = []
    for value in scaffold.grid:
        meet = scaffold.meet_for_block((value,))
        if meet.rank == 0 or not rng.integers(0, 2):
            continue
        chosen.append((value, int(rng.integers(0, meet.rank + 1)), meet))
    meets = {value: meet for value, _, meet in chosen}
    spec = LowerBoundSpec(
        tuple(v for v, _, _ in chosen), tuple(k for _, k, _ in chosen)
    )

    dim = scaffold.dim
    parts: list[np.ndarray] = []
    for value, k in zip(spec.values, spec.subspace_dims):
        if k == 0:
            continue
        subspace = _random_subspace_inside(meets[value], k, rng, tol)
        parts.append(value * subspace.projection(tol).entries)
    if not parts:
        return HermitianOperator.zeros(dim)
    return HermitianOperator(sum(parts), tol)


def perturbed_candidate(
    candidate: HermitianOperator,
    eps: float,
    seed: int,
    tol: Tolerances | None = None,
) -> HermitianOperator:
    """Fault injection: add ``eps`` times a rank-1 projection to ``candidate``.

    The direction is redrawn until it straddles at least two atoms of the
    candidate's measure (when there are two), so the perturbation is not
    absorbed into an existing eigenspace.
    """
    tol = tol or DEFAULT_TOLERANCES
    if eps <= 0:
        raise InvalidInput("perturbation size must be positive")
    rng = np.random.default_rng(seed)
    measure = measure_of(candidate, tol)
    dim = candidate.dim
    for _ in range(200):
        vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        vec /= np.linalg.norm(vec)
        weights = [float(np.linalg.norm(p.entries @ vec) ** 2) for _, p in measure.atoms]
        if len(measure.atoms) == 1 or sum(1 for w in weights if w >= 0.05) >= 2:
            bump = eps * np.outer(vec, vec.conj())
            return HermitianOperator(candidate.entries + bump, tol)
    raise InvalidInput("could not draw a perturbation direction")


def _sample_regions(
    grid: list[float], rng: np.random.Generator
) -> list[BorelDescriptor]:
    """Deterministic sample of finite grid subsets plus their complements."""
    n = len(grid)
    subsets: list[tuple[float, ...]] = []
    if 2**n <= _MAX_REGION_SAMPLES:
        for mask in range(2**n):
            subsets.append(tuple(grid[i] for i in range(n) if mask >> i & 1))
    else:
        subsets.append(())
        subsets.append(tuple(grid))
        while len(subsets) < _MAX_REGION_SAMPLES:
            mask = int(rng.integers(0, 2**n))
            subsets.append(tuple(grid[i] for i in range(n) if mask >> i & 1))
    regions = [BorelDescriptor.finite(s) for s in subsets]
    regions.extend(BorelDescriptor.cofinite(s) for s in subsets)
    return regions


def _sample_disjoint_pairs(
    grid: list[float], rng: np.random.Generator
) -> list[tuple[BorelDescriptor, BorelDescriptor]]:
    """Disjoint region pairs over the grid, including 0-containing cofinite ones."""
    n = len(grid)
    pairs: list[tuple[BorelDescriptor, BorelDescriptor]] = []

    def subset(mask: int) -> tuple[float, ...]:
        return tuple(grid[i] for i in range(n) if mask >> i & 1)

    full = 2**n - 1

    def both_pairs(m1: int, m2: int):
        # m1 and m2 are disjoint grid masks.  The finite pair is 0-free on
        # both sides; restricting the cofinite side to exclude everything
        # outside m1 keeps it disjoint from m2 while containing 0.
        pairs.append(
            (BorelDescriptor.finite(subset(m1)), BorelDescriptor.finite(subset(m2)))
        )
        pairs.append(
            (BorelDescriptor.cofinite(subset(full & ~m1)), BorelDescriptor.finite(subset(m2)))
        )

    if 4**n <= _MAX_PAIR_SAMPLES * 8:
        for m1 in range(2**n):
            for m2 in range(2**n):
                if m1 & m2 == 0:
                    both_pairs(m1, m2)
    else:
        while len(pairs) < _MAX_PAIR_SAMPLES:
            m1 = int(rng.integers(0, 2**n))
            m2 = int(rng.integers(0, 2**n)) & ~m1
            both_pairs(m1, m2)
    return pairs


def verify_infimum(
    family: Sequence[HermitianOperator],
    candidate: HermitianOperator,
    trials: int = 100,
    seed: int = 0,
    tol: Tolerances | None = None,
) -> Verdict:
    """Check ``candidate`` against both clauses of the infimum definition.

    Checks, each reporting its worst residual: the candidate precedes every
    family member (both order tests); every sampled lower bound precedes the
    candidate; the constructed measure satisfies the spectral measure axioms
    on sampled regions; and the candidate's own measure matches the
    construction.  Identical inputs yield an identical verdict.
    """
    tol = tol or DEFAULT_TOLERANCES
    family = list(family)
    if not family:
        raise EmptyFamily("verify_infimum needs at least one operator")
    if trials < 1:
        raise InvalidInput("trials must be at least 1")
    _check_same_dim(candidate, *family)
    dim = candidate.dim

    measures = [measure_of(op, tol) for op in family]
    scaffold = _MeetMeasureScaffold(measures, tol, DEFAULT_PARTITION_CAP)
    candidate_measure = measure_of(candidate, tol)
    rng = np.random.default_rng(seed)
    trial_seeds = [int(s) for s in rng.integers(0, 2**63, size=trials)]

    checks: list[CheckResult] = []

    def add(name: str, residual: float, threshold: float, detail: str):
        checks.append(CheckResult(name, residual <= threshold, residual, detail))

    # (a) candidate is a common lower bound, by both order tests
    worst_alg, worst_spec, alg_at, spec_at = 0.0, 0.0, -1, -1
    for i, member in enumerate(family):
        r = logic_leq_algebraic_residual(candidate, member)
        if r > worst_alg:
            worst_alg, alg_at = r, i
        r = logic_leq_spectral_residual(candidate, member, tol)
        if r > worst_spec:
            worst_spec, spec_at = r, i
    add(
        "candidate_lower_bound_algebraic",
        worst_alg,
        tol.tol_residual,
        f"worst member index {max(alg_at, 0)}",
    )
    add(
        "candidate_lower_bound_spectral",
        worst_spec,
        tol.tol_residual,
        f"worst member index {max(spec_at, 0)}",
    )

    # (b) sampled maximality: every generated lower bound precedes the candidate
    worst_max, max_seed = 0.0, trial_seeds[0] if trial_seeds else 0
    for trial_seed in trial_seeds:
        bound = generate_lower_bound(family, trial_seed, tol)
        r = max(
            logic_leq_algebraic_residual(bound, candidate),
            logic_leq_spectral_residual(bound, candidate, tol),
        )
        if r > worst_max:
            worst_max, max_seed = r, trial_seed
    add(
        "maximality_sampled",
        worst_max,
        tol.tol_residual,
        f"worst trial seed {max_seed}",
    )

    # (c) spectral measure axioms of the construction, on sampled regions
    eye = np.eye(dim)
    regions = _sample_regions(scaffold.grid, rng)
    projections = {r: scaffold.projection_for(r, "singleton") for r in regions}

    total_residual = max(
        _fro(projections[BorelDescriptor.real_line()].entries - eye),
        _fro(projections[BorelDescriptor.empty()].entries),
    )
    add("g_total", total_residual, tol.tol_residual, "value on R and on the empty set")

    worst_comp, comp_at = 0.0, BorelDescriptor.empty()
    for region in regions:
        comp = projections.get(region.complement())
        if comp is None:
            comp = scaffold.projection_for(region.complement(), "singleton")
        r = _fro(comp.entries - (eye - projections[region].entries))
        if r > worst_comp:
            worst_comp, comp_at = r, region
    add("g_complement", worst_comp, tol.tol_residual, f"worst region {comp_at}")

    worst_add, add_at = 0.0, "none"
    for r1, r2 in _sample_disjoint_pairs(scaffold.grid, rng):
        if r1.kind == "cofinite":
            union = BorelDescriptor.cofinite(
                tuple(v for v in r1.values if not r2.contains(v, tol.tol_eig))
            )
        else:
            union = BorelDescriptor.finite(tuple(set(r1.values) | set(r2.values)))
        for region in (r1, r2, union):
            if region not in projections:
                projections[region] = scaffold.projection_for(region, "singleton")
        gap = _fro(
            projections[union].entries
            - projections[r1].entries
            - projections[r2].entries
        )
        product = _fro(projections[r1].entries @ projections[r2].entries)
        r = max(gap, product)
        if r > worst_add:
            worst_add, add_at = r, f"{r1} with {r2}"
    add("g_additivity", worst_add, tol.tol_residual, f"worst pair {add_at}")

    worst_match, match_at = 0.0, BorelDescriptor.empty()
    for region in regions:
        r = _fro(
            candidate_measure.evaluate(region, tol).entries - projections[region].entries
        )
        if r > worst_match:
            worst_match, match_at = r, region
    add(
        "g_matches_candidate",
        worst_match,
        tol.tol_residual,
        f"worst region {match_at}",
    )

    checks.sort(key=lambda c: c.name)
    return Verdict(
        passed=all(c.passed for c in checks),
        checks=tuple(checks),
        seed=int(seed),
        trials=int(trials),
    )
