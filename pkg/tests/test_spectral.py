import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specmeet import (
    BorelDescriptor,
    DimensionMismatch,
    EmptyFamily,
    FiniteSpectralMeasure,
    HermitianOperator,
    InvalidInput,
    Projection,
    Tolerances,
    joint_value_grid,
    measure_of,
)

from conftest import random_hermitian

DIAG_120 = HermitianOperator(np.diag([1.0, 2.0, 0.0]))
SWAP = HermitianOperator([[0.0, 1.0], [1.0, 0.0]])


def descriptor_values():
    return st.lists(
        st.floats(min_value=-100, max_value=100, allow_nan=False),
        max_size=4,
        unique=True,
    ).filter(
        lambda vs: all(
            abs(a - b) > 1e-8 for i, a in enumerate(vs) for b in vs[i + 1 :]
        )
    )


class TestBorelDescriptor:
    def test_sorts_values(self):
        d = BorelDescriptor.finite([3.0, 1.0, 2.0])
        assert d.values == (1.0, 2.0, 3.0)

    def test_rejects_near_duplicates(self):
        with pytest.raises(InvalidInput):
            BorelDescriptor.finite([1.0, 1.0 + 1e-12])

    def test_rejects_bad_kind(self):
        with pytest.raises(InvalidInput):
            BorelDescriptor("open_interval", (0.0, 1.0))

    def test_membership_finite(self):
        d = BorelDescriptor.finite([1.0, 2.0])
        assert d.contains(1.0)
        assert d.contains(1.0 + 1e-10)
        assert not d.contains(1.5)

    def test_membership_cofinite(self):
        d = BorelDescriptor.cofinite([1.0])
        assert not d.contains(1.0)
        assert d.contains(0.0)
        assert d.contains(7.25)

    @given(descriptor_values(), st.booleans())
    @settings(max_examples=60, deadline=None)
    def test_complement_is_involutive(self, values, cofinite):
        kind = "cofinite" if cofinite else "finite"
        d = BorelDescriptor(kind, tuple(values))
        assert d.complement().complement() == d
        assert d.complement().kind != d.kind

    @given(descriptor_values(), st.floats(min_value=-100, max_value=100))
    @settings(max_examples=60, deadline=None)
    def test_complement_flips_membership(self, values, probe):
        d = BorelDescriptor.finite(tuple(values))
        assert d.contains(probe) != d.complement().contains(probe)


class TestMeasureOf:
    def test_diagonal_with_zero(self):
        m = measure_of(DIAG_120)
        values = [v for v, _ in m.atoms]
        assert values == [0.0, 1.0, 2.0]
        np.testing.assert_allclose(m.atoms[0][1].entries, np.diag([0.0, 0.0, 1.0]))
        np.testing.assert_allclose(m.atoms[1][1].entries, np.diag([1.0, 0.0, 0.0]))
        np.testing.assert_allclose(m.atoms[2][1].entries, np.diag([0.0, 1.0, 0.0]))

    def test_zero_matrix(self):
        m = measure_of(HermitianOperator.zeros(2))
        assert len(m.atoms) == 1
        assert m.atoms[0][0] == 0.0
        np.testing.assert_allclose(m.atoms[0][1].entries, np.eye(2))

    def test_swap_matrix(self):
        m = measure_of(SWAP)
        assert [v for v, _ in m.atoms] == pytest.approx([-1.0, 1.0])
        np.testing.assert_allclose(
            m.atoms[0][1].entries, 0.5 * np.array([[1, -1], [-1, 1]]), atol=1e-12
        )

    def test_round_trip(self, rng):
        for _ in range(30):
            op = random_hermitian(rng, int(rng.integers(1, 7)))
            m = measure_of(op)
            scale = max(1.0, op.norm_fro())
            assert np.linalg.norm(m.reconstruct() - op.entries) <= 1e-8 * scale


class TestMeasureValidation:
    def test_rejects_unordered_atoms(self):
        with pytest.raises(InvalidInput):
            FiniteSpectralMeasure(
                [
                    (2.0, Projection(np.diag([1.0, 0.0]))),
                    (1.0, Projection(np.diag([0.0, 1.0]))),
                ]
            )

    def test_rejects_nonorthogonal_atoms(self):
        p = Projection(np.diag([1.0, 0.0]))
        with pytest.raises(InvalidInput):
            FiniteSpectralMeasure([(1.0, p), (2.0, p)])

    def test_rejects_incomplete_atoms(self):
        with pytest.raises(InvalidInput):
            FiniteSpectralMeasure([(1.0, Projection(np.diag([1.0, 0.0])))])


class TestEvaluate:
    def test_finite_pick(self):
        m = measure_of(DIAG_120)
        proj = m.evaluate(BorelDescriptor.finite([1.0, 2.0]))
        np.testing.assert_allclose(proj.entries, np.diag([1.0, 1.0, 0.0]))

    def test_whole_line_gives_identity(self):
        m = measure_of(DIAG_120)
        proj = m.evaluate(BorelDescriptor.real_line())
        np.testing.assert_allclose(proj.entries, np.eye(3))

    def test_cofinite_excluding_one_atom(self):
        m = measure_of(DIAG_120)
        proj = m.evaluate(BorelDescriptor.cofinite([1.0]))
        np.testing.assert_allclose(proj.entries, np.diag([0.0, 1.0, 1.0]))

    def test_additivity_on_disjoint_sets(self, rng):
        for _ in range(20):
            m = measure_of(random_hermitian(rng, 5))
            values = [v for v, _ in m.atoms]
            half = len(values) // 2
            d1 = BorelDescriptor.finite(values[:half])
            d2 = BorelDescriptor.finite(values[half:])
            union = BorelDescriptor.finite(values)
            gap = m.evaluate(union).entries - (
                m.evaluate(d1).entries + m.evaluate(d2).entries
            )
            assert np.linalg.norm(gap) <= 1e-10

    def test_complement_identity(self, rng):
        for _ in range(20):
            m = measure_of(random_hermitian(rng, 5))
            values = [v for v, _ in m.atoms]
            subset = [v for i, v in enumerate(values) if i % 2 == 0]
            for d in (BorelDescriptor.finite(subset), BorelDescriptor.cofinite(subset)):
                gap = m.evaluate(d.complement()).entries - (
                    np.eye(5) - m.evaluate(d).entries
                )
                assert np.linalg.norm(gap) <= 1e-10

    def test_empty_set_gives_zero(self):
        m = measure_of(DIAG_120)
        assert m.evaluate(BorelDescriptor.empty()).rank == 0


class TestSupportAndGrid:
    def test_support_excludes_zero(self):
        assert measure_of(DIAG_120).support_nonzero() == [1.0, 2.0]
        assert measure_of(HermitianOperator.zeros(2)).support_nonzero() == []
        assert measure_of(SWAP).support_nonzero() == pytest.approx([-1.0, 1.0])

    def test_grid_unions_supports(self):
        m1 = measure_of(DIAG_120)
        m2 = measure_of(HermitianOperator(np.diag([1.0, 3.0, 0.0])))
        assert joint_value_grid([m1, m2]) == pytest.approx([1.0, 2.0, 3.0])

    def test_single_measure_grid_is_its_support(self, rng):
        m = measure_of(random_hermitian(rng, 4))
        assert joint_value_grid([m]) == pytest.approx(m.support_nonzero())

    def test_grid_clusters_nearby_values(self):
        m1 = measure_of(HermitianOperator(np.diag([1.0, 0.0])))
        m2 = measure_of(HermitianOperator(np.diag([1.0 + 1e-12, 0.0])))
        grid = joint_value_grid([m1, m2])
        assert len(grid) == 1
        assert grid[0] == pytest.approx(1.0, abs=1e-11)

    def test_grid_respects_custom_clustering_radius(self):
        m1 = measure_of(HermitianOperator(np.diag([1.0, 0.0])))
        m2 = measure_of(HermitianOperator(np.diag([1.0 + 1e-5, 0.0])))
        assert len(joint_value_grid([m1, m2])) == 2
        wide = Tolerances(tol_eig=1e-4, tol_zero=1e-4)
        assert len(joint_value_grid([m1, m2], wide)) == 1

    def test_errors(self):
        with pytest.raises(EmptyFamily):
            joint_value_grid([])
        with pytest.raises(DimensionMismatch):
            joint_value_grid(
                [measure_of(HermitianOperator.zeros(2)), measure_of(HermitianOperator.zeros(3))]
            )
