"""Shared generators for randomized tests.

Families are built from small integer spectra rotated by random unitaries;
repeated spectrum values force eigenvalue multiplicities, which is what makes
joint eigenspace meets nontrivial.
"""

from __future__ import annotations

import numpy as np
import pytest

from specmeet import HermitianOperator, Projection

INTEGER_SPECTRUM = (-2, -1, 0, 1, 2)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    mix = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(mix)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def random_hermitian(rng: np.random.Generator, n: int) -> HermitianOperator:
    mix = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return HermitianOperator((mix + mix.conj().T) / 2)


def rotated_spectrum_operator(
    rng: np.random.Generator, dim: int, unitary: np.ndarray | None = None
) -> HermitianOperator:
    spectrum = rng.choice(INTEGER_SPECTRUM, size=dim)
    u = unitary if unitary is not None else random_unitary(rng, dim)
    return HermitianOperator(u @ np.diag(spectrum.astype(float)) @ u.conj().T)


def random_family(
    rng: np.random.Generator,
    dim: int | None = None,
    members: int | None = None,
) -> list[HermitianOperator]:
    """2-4 rotated integer-spectrum operators on a common space.

    Half the families share one unitary (a commuting family with rich joint
    structure); the rest rotate each member independently, where meets are
    carried by forced multiplicities.
    """
    dim = dim if dim is not None else int(rng.integers(2, 6))
    members = members if members is not None else int(rng.integers(2, 5))
    shared = random_unitary(rng, dim) if rng.random() < 0.5 else None
    return [rotated_spectrum_operator(rng, dim, shared) for _ in range(members)]


def random_projection(
    rng: np.random.Generator, dim: int, rank: int | None = None
) -> Projection:
    rank = rank if rank is not None else int(rng.integers(0, dim + 1))
    if rank == 0:
        return Projection.zero(dim)
    basis = random_unitary(rng, dim)[:, :rank]
    return Projection(basis @ basis.conj().T)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
