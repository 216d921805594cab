"""
Tests for Hamiltonians, surface terms and the classical/jump split.
"""

import numpy as np
import pytest

from spinpath.components.groupoid import Region, SpinConfiguration
from spinpath.components.interaction import (
    Interaction,
    PauliTerm,
    boundary_hamiltonian,
    hamiltonian,
    ising_chain,
    phase_factor,
    split,
    surface_term,
    transverse_field_ising,
)
from spinpath.core.errors import (
    InsufficientBoundaryError,
    InvalidInteractionError,
    RegionError,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2)


def kron(*factors):
    result = np.eye(1)
    for f in factors:
        result = np.kron(result, f)
    return result


class TestHamiltonian:
    """Test H_Λ and W_Λ."""

    def test_ising_chain(self):
        phi = ising_chain(Region.box(0, 2))
        h = hamiltonian(phi, Region.box(0, 2))
        expected = -(kron(Z, Z, I2) + kron(I2, Z, Z))
        assert np.allclose(h.to_matrix(), expected)
        assert h.coefficients[0, 0] == pytest.approx(-2.0)

    def test_transverse_single_site(self):
        phi = transverse_field_ising(Region.box(0, 2), transverse=0.5, field=0.25)
        h = hamiltonian(phi, Region.of(1))
        assert np.allclose(h.to_matrix(), -0.5 * X - 0.25 * Z)

    def test_invalid_interaction_raises(self):
        phi = Interaction([PauliTerm(Region.of(0), Region(), 1j)])
        with pytest.raises(InvalidInteractionError) as excinfo:
            hamiltonian(phi, Region.of(0))
        assert excinfo.value.violations[0].kind == "self-adjoint"

    def test_surface_term(self):
        phi = ising_chain(Region.box(0, 3))
        w = surface_term(phi, Region.of(1, 2), Region.box(0, 3))
        assert w.region == Region.box(0, 3)
        expected = -(kron(Z, Z, I2, I2) + kron(I2, I2, Z, Z))
        assert np.allclose(w.to_matrix(), expected)

        with pytest.raises(RegionError):
            surface_term(phi, Region.of(4), Region.box(0, 3))

    def test_hamiltonian_plus_surface(self):
        phi = transverse_field_ising(Region.box(0, 3), field=0.3)
        ambient, region = Region.box(0, 3), Region.of(1, 2)
        total = hamiltonian(phi, region).embed(ambient) + surface_term(phi, region, ambient)
        assert total.allclose(split(phi, region, ambient).total, atol=1e-12)

    def test_phase_factor(self):
        assert phase_factor(0.5) == 1j
        assert phase_factor(1.0) == -1
        assert phase_factor(0.25) == pytest.approx(np.exp(0.25j * np.pi))


class TestSplit:
    """Test the classical part and jump list."""

    def setup_method(self):
        self.phi = transverse_field_ising(Region.box(0, 2))
        self.region = Region.of(1)
        self.bundle = split(self.phi, self.region, Region.box(0, 2))

    def test_decomposition(self):
        bundle = self.bundle
        assert bundle.enlarged == Region.box(0, 2)
        assert bundle.outside == Region.of(0, 2)
        assert len(bundle.jumps) == 1
        jump = bundle.jumps[0]
        assert jump.flip_sites == Region.of(1)
        assert (jump.rate, jump.theta) == (1.0, 1.0)
        assert bundle.total_rate == 1.0
        assert bundle.classical.is_diagonal()

    def test_coupling_is_rate_times_jump(self):
        bundle = self.bundle
        jump = bundle.jumps[0]
        assert bundle.coupling().allclose(jump.operator(bundle.enlarged) * jump.rate)

    def test_energies(self):
        # σ = (+, +, +) and (+, −, +)
        energies = self.bundle.energies()
        assert energies[0] == pytest.approx(-2.0)
        assert energies[2] == pytest.approx(2.0)
        assert self.bundle.classical_norm() == pytest.approx(2.0)

    def test_condition_matches_boundary_hamiltonian(self):
        phi = Interaction(
            list(self.phi.terms) + [PauliTerm(Region.of(0), Region.of(1), 0.5)],
            range=1,
        )
        bundle = split(phi, self.region, Region.box(0, 2))
        omega = SpinConfiguration.from_spins(bundle.outside, [-1, 1])

        conditioned = bundle.condition(omega)
        expected = boundary_hamiltonian(phi, self.region, omega)

        assert conditioned.region == conditioned.enlarged == self.region
        assert conditioned.total.allclose(expected)
        jumps = [j.operator(self.region) * j.rate for j in conditioned.jumps]
        assert conditioned.coupling().allclose(jumps[0] + jumps[1])

    def test_condition_on_frozen_field(self):
        omega = SpinConfiguration.from_spins(self.bundle.outside, [-1, 1])
        conditioned = self.bundle.condition(omega)
        # the two Ising neighbours cancel and only the transverse field remains
        assert np.allclose(conditioned.total.to_matrix(), -X)

    def test_condition_needs_outside_configuration(self):
        with pytest.raises(RegionError):
            self.bundle.condition(SpinConfiguration(Region.of(0), (0,)))

    def test_region_outside_ambient(self):
        with pytest.raises(RegionError):
            split(self.phi, Region.of(5), Region.box(0, 2))


class TestBoundaryHamiltonian:
    """Test H^ω_Λ."""

    def setup_method(self):
        self.phi = ising_chain(Region.box(0, 3), field=0.5)

    def test_classical_boundary_field(self):
        omega = SpinConfiguration.from_spins(Region.of(0, 2), [1, 1])
        h = boundary_hamiltonian(self.phi, Region.of(1), omega)
        # −σ1(σ0 + σ2) − 0.5 σ1 with both neighbours up
        assert np.allclose(h.to_matrix(), -2.5 * Z)

    def test_overlapping_boundary(self):
        omega = SpinConfiguration.from_spins(Region.of(1), [1])
        with pytest.raises(RegionError):
            boundary_hamiltonian(self.phi, Region.of(1), omega)

    def test_insufficient_boundary(self):
        omega = SpinConfiguration.from_spins(Region.of(0), [1])
        with pytest.raises(InsufficientBoundaryError):
            boundary_hamiltonian(self.phi, Region.of(1), omega, ambient=Region.box(0, 3))

    def test_insufficient_boundary_without_ambient(self):
        phi = ising_chain(Region.box(-1, 1))
        omega = SpinConfiguration.from_spins(Region.of(1), [1])
        with pytest.raises(InsufficientBoundaryError):
            boundary_hamiltonian(phi, Region.of(0), omega)

    def test_boundary_beyond_support(self):
        # site 5 carries no term coupled to site 3
        omega = SpinConfiguration.from_spins(Region.of(2, 5), [-1, 1])
        h = boundary_hamiltonian(self.phi, Region.of(3), omega)
        assert np.allclose(h.to_matrix(), 0.5 * Z)

    def test_empty_boundary_at_chain_end(self):
        pair = Region.box(0, 1)
        empty = SpinConfiguration.from_spins(Region(), [])
        h = boundary_hamiltonian(ising_chain(pair), pair, empty)
        assert h.allclose(hamiltonian(ising_chain(pair), pair))
