"""
Tests for the classical projection and the classical DLR kernel.
"""

import math

import numpy as np
import pytest

from spinpath.components.groupoid import (
    LocalOperator,
    Region,
    SpinConfiguration,
    pauli_string,
    pauli_x,
    pauli_z,
)
from spinpath.components.interaction import hamiltonian, ising_chain, transverse_field_ising
from spinpath.components.kms import (
    DensityState,
    classical_dlr_kernel,
    classical_projection,
    conditional_kernel,
    is_classical_state,
)
from spinpath.core.errors import InsufficientBoundaryError, InvalidInteractionError, RegionError

CHAIN = Region.box(0, 2)
OUTSIDE = Region.of(0, 2)


class TestClassicalProjection:
    """Test E(A), which keeps the diagonal arrows."""

    def test_diagonal_operator_is_fixed(self):
        z = pauli_string(CHAIN, [0, 2], [])
        assert classical_projection(z).allclose(z)

    def test_flips_are_removed(self):
        projected = classical_projection(pauli_x(CHAIN, 1) + pauli_z(CHAIN, 1))
        assert projected.allclose(pauli_z(CHAIN, 1))
        assert projected.is_diagonal()


class TestIsClassicalState:
    """Test the classicality residual of states."""

    def test_classical_gibbs_state(self):
        state = DensityState.gibbs(hamiltonian(ising_chain(CHAIN, field=0.5), CHAIN), 1.0)
        report = is_classical_state(state)
        assert report.passed()
        assert report.residual < 1e-14

    def test_transverse_field_is_detected(self):
        phi = transverse_field_ising(CHAIN, transverse=0.8)
        state = DensityState.gibbs(hamiltonian(phi, CHAIN), 1.0)
        report = is_classical_state(state)
        assert not report.passed()
        assert report.residual > 1e-3
        assert set(report.worst) & {"X", "Y"}

    def test_custom_test_set(self):
        phi = transverse_field_ising(CHAIN, transverse=0.8)
        state = DensityState.gibbs(hamiltonian(phi, CHAIN), 1.0)
        report = is_classical_state(state, [pauli_z(CHAIN, 0), pauli_z(CHAIN, 1)])
        assert report.residual == 0.0

    def test_labels_from_pairs(self):
        state = DensityState.from_matrix(Region.of(0), np.array([[0.5, 0.5], [0.5, 0.5]]))
        report = is_classical_state(state, [("x0", pauli_x(Region.of(0), 0))])
        assert report.worst == "x0"
        assert report.residual == pytest.approx(1.0)


class TestClassicalKernel:
    """Test the Boltzmann kernel of a classical interaction."""

    def setup_method(self):
        self.phi = ising_chain(CHAIN)
        self.plus = SpinConfiguration.uniform(OUTSIDE, 0)

    def test_kernel_with_aligned_boundary(self):
        kernel = classical_dlr_kernel(self.phi, Region.of(1), 0.5, self.plus)
        up = math.exp(1.0) / (math.exp(1.0) + math.exp(-1.0))
        assert np.allclose(kernel, [up, 1 - up])

    def test_kernel_without_boundary(self):
        pair = Region.box(0, 1)
        empty = SpinConfiguration.from_spins(Region(), [])
        kernel = classical_dlr_kernel(ising_chain(pair), pair, 1.0, empty)
        weights = np.exp([1.0, -1.0, -1.0, 1.0])
        assert np.allclose(kernel, weights / weights.sum())

    def test_kernel_needs_both_neighbours(self):
        left = SpinConfiguration.uniform(Region.of(0), 0)
        with pytest.raises(InsufficientBoundaryError):
            classical_dlr_kernel(self.phi, Region.of(1), 0.5, left)

    def test_kernel_inside_smaller_ambient(self):
        left = SpinConfiguration.uniform(Region.of(0), 0)
        kernel = classical_dlr_kernel(self.phi, Region.of(1), 0.5, left, Region.box(0, 1))
        up = math.exp(0.5) / (math.exp(0.5) + math.exp(-0.5))
        assert np.allclose(kernel, [up, 1 - up])

    def test_quantum_interaction_rejected(self):
        with pytest.raises(InvalidInteractionError):
            classical_dlr_kernel(transverse_field_ising(CHAIN), Region.of(1), 1.0, self.plus)

    def test_conditional_kernel_matches(self):
        state = DensityState.gibbs(hamiltonian(self.phi, CHAIN), 0.5)
        for boundary in SpinConfiguration.all(OUTSIDE):
            kernel = classical_dlr_kernel(self.phi, Region.of(1), 0.5, boundary)
            conditional = conditional_kernel(state.density, Region.of(1), boundary)
            assert np.allclose(kernel, conditional, atol=1e-12)

    def test_conditional_kernel_wrong_boundary(self):
        density = LocalOperator.identity(CHAIN) / 8
        with pytest.raises(RegionError):
            conditional_kernel(density, Region.of(1), SpinConfiguration.uniform(Region.of(0), 0))

    def test_conditional_kernel_without_weight(self):
        matrix = np.zeros((8, 8))
        matrix[0, 0] = 1.0
        density = LocalOperator.from_matrix(CHAIN, matrix)
        minus = SpinConfiguration.uniform(OUTSIDE, 1)
        with pytest.raises(ValueError, match="no weight"):
            conditional_kernel(density, Region.of(1), minus)
