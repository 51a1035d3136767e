"""Spectral layer: idempotent location, Peirce multiplicities, mutation,
square-zero search."""

import numpy as np
import pytest

from coneforge.algebra import Algebra
from coneforge.catalog import cartan_cubic, construct, hurwitz, triple
from coneforge.numeric import (
    find_idempotent,
    jordan_mutation,
    nilpotent_search,
    orthonormal_frame,
    peirce,
    structure_tensor,
)
from coneforge.scalars import Scalar


def closest(points, target):
    target = np.asarray(target, dtype=float)
    return min(np.linalg.norm(p - target) for p in points)


@pytest.fixture(scope="module")
def triple_r():
    return triple(hurwitz(1))


@pytest.fixture(scope="module")
def harmonic():
    return cartan_cubic(0)[1]


class TestFrame:
    def test_identity_metric(self, triple_r):
        assert np.allclose(orthonormal_frame(triple_r), np.eye(3))

    def test_weighted_metric(self):
        alg = Algebra(
            2,
            [(0, 0, 0, 1), (1, 1, 1, 4)],
            metric=[[1, 0], [0, 4]],
            commutative=True,
        )
        frame = orthonormal_frame(alg)
        assert np.allclose(frame, np.diag([1.0, 0.5]))
        gram = frame.T @ np.array([[1.0, 0.0], [0.0, 4.0]]) @ frame
        assert np.allclose(gram, np.eye(2))

    def test_coupled_metric_orthonormalizes(self):
        alg = Algebra(2, [(0, 0, 0, 1)], metric=[[2, 1], [1, 1]], commutative=True)
        frame = orthonormal_frame(alg)
        gram = frame.T @ np.array([[2.0, 1.0], [1.0, 1.0]]) @ frame
        assert np.allclose(gram, np.eye(2), atol=1e-12)

    def test_indefinite_metric_rejected(self):
        alg = Algebra(
            2,
            [(0, 0, 0, 1), (1, 1, 1, -1)],
            metric=[[1, 0], [0, -1]],
            commutative=True,
        )
        with pytest.raises(ValueError, match="positive definite"):
            structure_tensor(alg)

    def test_noncommutative_rejected(self):
        with pytest.raises(ValueError, match="commutative"):
            structure_tensor(hurwitz(4))


class TestStructureTensor:
    def test_fully_symmetric(self):
        tensor = structure_tensor(triple(hurwitz(2)))
        assert np.allclose(tensor, tensor.transpose(1, 0, 2))
        assert np.allclose(tensor, tensor.transpose(2, 1, 0))
        assert np.allclose(tensor, tensor.transpose(0, 2, 1))

    def test_matches_table_for_identity_metric(self, triple_r):
        tensor = structure_tensor(triple_r)
        assert tensor[0, 1, 2] == pytest.approx(1.0)
        assert tensor[0, 0, 0] == pytest.approx(0.0)


class TestFindIdempotent:
    def test_triple_r_idempotents(self, triple_r):
        pairs = find_idempotent(triple_r, restarts=30, seed=1)
        assert pairs
        for c, _ in pairs:
            assert np.dot(c, c) == pytest.approx(0.75, abs=1e-9)
        assert closest([c for c, _ in pairs], [0.5, 0.5, 0.5]) < 1e-8

    def test_harmonic_idempotents(self, harmonic):
        pairs = find_idempotent(harmonic, restarts=30, seed=2)
        assert pairs
        points = [c for c, _ in pairs]
        for c in points:
            assert np.dot(c, c) == pytest.approx(1.0 / 36.0, abs=1e-9)
        assert closest(points, [0.0, 1.0 / 6.0]) < 1e-8
        w = 1.0 / (4.0 * np.sqrt(3.0))
        assert closest(points, [w, -1.0 / 12.0]) < 1e-8

    def test_residuals_meet_tolerance(self, triple_r):
        frame = orthonormal_frame(triple_r)
        tensor = structure_tensor(triple_r)
        for c, reported in find_idempotent(triple_r, seed=3):
            y = np.linalg.solve(frame, c)
            residual = np.einsum("ijk,i,j->k", tensor, y, y) - y
            assert np.linalg.norm(residual) <= 1e-10
            assert reported == pytest.approx(np.linalg.norm(residual), abs=1e-12)

    def test_zero_product_algebra_has_none(self):
        # single structure entry forced to zero leaves the zero product
        alg = Algebra(2, [(0, 0, 0, 0)], commutative=True)
        assert find_idempotent(alg, restarts=5) == []

    def test_deterministic(self, harmonic):
        a = find_idempotent(harmonic, restarts=10, seed=7)
        b = find_idempotent(harmonic, restarts=10, seed=7)
        assert len(a) == len(b)
        for (x, rx), (y, ry) in zip(a, b):
            assert np.allclose(x, y) and rx == ry


class TestPeirce:
    def test_triple_r(self, triple_r):
        data = peirce(triple_r, idempotent=np.array([0.5, 0.5, 0.5]))
        assert data.residual <= 1e-10
        assert data.n1 == 0 and data.n2 == 2 and data.d == 0
        assert data.idempotent_norm == pytest.approx(0.75, abs=1e-9)
        assert not data.scaled
        assert [(round(v, 6), m) for v, m in data.eigenvalues] == [(-0.5, 2), (1.0, 1)]

    def test_harmonic(self, harmonic):
        data = peirce(harmonic)
        assert data.n1 == 1 and data.n2 == 0 and data.d is None
        assert data.idempotent_norm == pytest.approx(1.0 / 36.0, abs=1e-9)
        assert data.multiplicity(1.0) == 1

    def test_triple_complex_dimensions(self):
        data = peirce(triple(hurwitz(2)), seed=5)
        assert (data.n1, data.n2) == (1, 2)
        assert data.d == 0
        assert data.multiplicity(0.5) == 2

    def test_scaled_spectrum_flagged_not_rejected(self):
        # u = x1^3/6 + (3/10) x1 x2^2 gives L(e1) eigenvalues {1, 3/10}
        alg = Algebra(
            2,
            {
                (0, 0, 0): Scalar(1),
                (0, 1, 1): Scalar(3, 0) / Scalar(10),
                (1, 1, 0): Scalar(3, 0) / Scalar(10),
            },
            commutative=True,
        )
        data = peirce(alg, idempotent=np.array([1.0, 0.0]))
        assert data.scaled
        assert data.residual <= 1e-10

    def test_explicit_idempotent_roundtrip(self, harmonic):
        data = peirce(harmonic, idempotent=np.array([0.0, 1.0 / 6.0]))
        assert data.n1 == 1
        assert np.allclose(data.idempotent, [0.0, 1.0 / 6.0])


class TestJordanMutation:
    def test_triple_r_full_space(self, triple_r):
        report = jordan_mutation(triple_r, idempotent=np.array([0.5, 0.5, 0.5]))
        assert report.dim == 3
        assert report.closed and report.jordan
        assert report.basis.shape == (3, 3)

    def test_small_eigenspace_dimension_matches_peirce(self):
        alg = triple(construct("cross3"))
        data = peirce(alg, seed=4)
        report = jordan_mutation(alg, idempotent=data.idempotent, seed=4)
        assert report.dim == data.n2 + 1
        assert report.closed and report.jordan

    def test_trivial_mutation_for_harmonic(self, harmonic):
        report = jordan_mutation(harmonic, idempotent=np.array([0.0, 1.0 / 6.0]))
        assert report.dim == 1
        assert report.closed and report.jordan
        assert report.trace_form_rank <= 1

    def test_multiply_stays_in_span(self, triple_r):
        report = jordan_mutation(triple_r, idempotent=np.array([0.5, 0.5, 0.5]))
        x = np.array([1.0, 0.0, 0.0])
        y = np.array([0.0, 1.0, 0.0])
        assert report.multiply(x, y).shape == (3,)


class TestNilpotentSearch:
    def test_triple_r_axes(self, triple_r):
        points = nilpotent_search(triple_r, restarts=25, seed=0)
        assert points
        tensor = structure_tensor(triple_r)
        for x in points:
            assert np.linalg.norm(np.einsum("ijk,i,j->k", tensor, x, x)) <= 1e-8

    def test_harmonic_has_no_nilpotents(self, harmonic):
        assert nilpotent_search(harmonic, restarts=25, seed=0) == []

    def test_polar_zero_block_found(self):
        alg = construct("clifford(1,2)")
        points = nilpotent_search(alg, restarts=25, seed=1)
        assert points
        block = min(points, key=lambda x: abs(x[0]) + abs(x[1]))
        assert abs(block[0]) < 1e-6 and abs(block[1]) < 1e-6
