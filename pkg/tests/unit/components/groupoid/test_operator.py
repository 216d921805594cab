"""
Tests for local operators: the matrix isomorphism, convolution and slicing.
"""

import numpy as np
import pytest

from spinpath.components.groupoid import (
    FlipSet,
    GroupoidArrow,
    LocalOperator,
    Region,
    SpinConfiguration,
    convolve,
    pauli_basis,
    pauli_string,
    pauli_x,
    pauli_y,
    pauli_z,
    random_operator,
    tensor,
)
from spinpath.core.config import configure_settings, reset_settings
from spinpath.core.errors import (
    DimensionError,
    RegionError,
    RegionMismatchError,
    RegionTooLargeError,
    UnsupportedSpinError,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


class TestLocalOperator:
    """Test the algebra of C(G_Λ) against the matrix picture."""

    def setup_method(self):
        self.rng = np.random.default_rng(11)
        self.pair = Region.of(0, 1)

    def test_identity_and_zero(self):
        assert np.allclose(LocalOperator.identity(self.pair).to_matrix(), np.eye(4))
        assert np.allclose(LocalOperator.zero(self.pair).to_matrix(), 0)

    def test_matrix_isomorphism(self):
        matrix = self.rng.standard_normal((4, 4)) + 1j * self.rng.standard_normal((4, 4))
        f = LocalOperator.from_matrix(self.pair, matrix)
        assert np.allclose(f.to_matrix(), matrix)

    def test_delta_is_matrix_unit(self):
        config = SpinConfiguration(self.pair, (0, 1))
        arrow = GroupoidArrow(config, FlipSet.from_sites(self.pair, [0]))
        expected = np.zeros((4, 4))
        expected[arrow.range.index(), config.index()] = 1.0
        f = LocalOperator.delta(arrow)
        assert np.allclose(f.to_matrix(), expected)
        assert f[arrow] == 1.0

    def test_convolution_is_matrix_product(self):
        f = random_operator(self.pair, self.rng)
        g = random_operator(self.pair, self.rng)
        assert np.allclose((f @ g).to_matrix(), f.to_matrix() @ g.to_matrix())
        assert np.allclose(convolve(g, f).to_matrix(), g.to_matrix() @ f.to_matrix())

    def test_convolution_for_q3(self):
        region = Region.of(0)
        f = random_operator(region, self.rng, q=3)
        g = random_operator(region, self.rng, q=3)
        assert (f @ g).dimension == 3
        assert np.allclose((f @ g).to_matrix(), f.to_matrix() @ g.to_matrix())

    def test_adjoint_and_trace(self):
        f = random_operator(self.pair, self.rng)
        assert np.allclose(f.adjoint().to_matrix(), f.to_matrix().conj().T)
        assert f.trace() == pytest.approx(np.trace(f.to_matrix()))
        assert random_operator(self.pair, self.rng, hermitian=True).is_self_adjoint(1e-10)

    def test_embed_follows_site_order(self):
        f = random_operator(Region.of(1), self.rng)
        m = f.to_matrix()
        assert np.allclose(f.embed(Region.of(0, 1)).to_matrix(), np.kron(np.eye(2), m))
        assert np.allclose(f.embed(Region.of(1, 2)).to_matrix(), np.kron(m, np.eye(2)))
        assert f.embed(Region.of(1)) is f

        with pytest.raises(RegionError):
            f.embed(Region.of(0, 2))

    def test_tensor(self):
        a = random_operator(Region.of(0), self.rng)
        b = random_operator(Region.of(1), self.rng)
        assert np.allclose(tensor(a, b).to_matrix(), np.kron(a.to_matrix(), b.to_matrix()))
        with pytest.raises(RegionError):
            tensor(a, a)

    def test_split_tensor(self):
        a = random_operator(Region.of(0), self.rng)
        b = random_operator(Region.of(1), self.rng)
        blocks = tensor(a, b).split_tensor(Region.of(1))
        expected = np.einsum("op,ij->iojp", a.to_matrix(), b.to_matrix())
        assert np.allclose(blocks, expected)

    def test_slice_evaluates_outside_block(self):
        a = random_operator(Region.of(0), self.rng)
        b = random_operator(Region.of(1), self.rng)
        f = tensor(a, b)
        omega = SpinConfiguration(Region.of(1), (1,))
        flip = FlipSet.from_sites(Region.of(1), [1])

        diagonal = f.slice(Region.of(0), omega)
        off_diagonal = f.slice(Region.of(0), omega, flip)

        assert np.allclose(diagonal.to_matrix(), b.to_matrix()[1, 1] * a.to_matrix())
        assert np.allclose(off_diagonal.to_matrix(), b.to_matrix()[0, 1] * a.to_matrix())

        with pytest.raises(RegionMismatchError):
            f.slice(Region.of(0), SpinConfiguration(Region.of(0), (0,)))

    def test_partial_trace(self):
        a = random_operator(Region.of(0), self.rng)
        b = random_operator(Region.of(1), self.rng)
        reduced = tensor(a, b).partial_trace(Region.of(0))
        assert np.allclose(reduced.to_matrix(), np.trace(b.to_matrix()) * a.to_matrix())

    def test_norm_and_predicates(self):
        assert pauli_x(Region.of(0), 0).norm() == pytest.approx(1.0)
        assert (pauli_z(Region.of(0), 0) * 2).norm() == pytest.approx(2.0)
        assert pauli_z(self.pair, 1).is_diagonal()
        assert not pauli_x(self.pair, 1).is_diagonal()

    def test_shape_and_region_errors(self):
        with pytest.raises(DimensionError):
            LocalOperator.from_matrix(self.pair, np.eye(2))
        with pytest.raises(DimensionError):
            LocalOperator(self.pair, np.eye(3))
        with pytest.raises(RegionMismatchError):
            _ = LocalOperator.identity(self.pair) + LocalOperator.identity(Region.of(0))


class TestRegionCap:
    """Dense storage is refused above the configured site cap."""

    def setup_method(self):
        configure_settings(max_sites=2)

    def teardown_method(self):
        reset_settings()

    def test_cap_enforced(self):
        with pytest.raises(RegionTooLargeError) as excinfo:
            LocalOperator.zero(Region.of(0, 1, 2))
        assert excinfo.value.cap == 2

    def test_cap_allows_smaller_regions(self):
        assert LocalOperator.identity(Region.of(0, 1)).dimension == 4


class TestPauli:
    """Test Pauli strings as groupoid functions."""

    def test_single_site_matrices(self):
        site = Region.of(0)
        assert np.allclose(pauli_x(site, 0).to_matrix(), X)
        assert np.allclose(pauli_y(site, 0).to_matrix(), Y)
        assert np.allclose(pauli_z(site, 0).to_matrix(), Z)

    def test_string_puts_sign_factor_first(self):
        region = Region.of(0, 1)
        assert np.allclose(pauli_string(region, [0], [1]).to_matrix(), np.kron(Z, X))
        assert np.allclose(
            pauli_string(Region.of(0), [0], [0]).to_matrix(), Z @ X
        )

    def test_basis_is_orthogonal(self):
        basis = list(pauli_basis(Region.of(0, 1)))
        assert len(basis) == 16
        assert basis[0][0] == "II"
        matrices = np.array([op.to_matrix() for _, op in basis])
        gram = np.einsum("aij,bij->ab", matrices.conj(), matrices)
        assert np.allclose(gram, 4 * np.eye(16))

    def test_errors(self):
        with pytest.raises(UnsupportedSpinError):
            pauli_string(Region.of(0), [0], [], q=3)
        with pytest.raises(RegionError):
            pauli_x(Region.of(0), 1)
