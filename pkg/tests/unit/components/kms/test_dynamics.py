"""
Tests for density states, the dynamics and the KMS condition.
"""

import math

import numpy as np
import pytest

from spinpath.components.groupoid import (
    LocalOperator,
    Region,
    pauli_string,
    pauli_x,
    pauli_y,
    pauli_z,
    random_operator,
)
from spinpath.components.interaction import hamiltonian, transverse_field_ising
from spinpath.components.kms import DensityState, DynamicsSpec, evolve, kms_check
from spinpath.core.errors import InvalidStateError, RegionError

SITE = Region.of(0)


class TestDensityState:
    """Test states given by density matrices."""

    def test_gibbs_is_normalized(self):
        generator = hamiltonian(transverse_field_ising(Region.box(0, 1)), Region.box(0, 1))
        state = DensityState.gibbs(generator, 0.5)
        assert state.region == Region.box(0, 1)
        assert state(LocalOperator.identity(Region.box(0, 1))) == pytest.approx(1.0)

    def test_single_spin_field(self):
        state = DensityState.gibbs(pauli_x(SITE, 0) * -1.0, 0.4)
        assert state(pauli_x(SITE, 0)) == pytest.approx(math.tanh(0.4))
        assert state(pauli_z(SITE, 0)) == pytest.approx(0.0, abs=1e-14)

    def test_lifts_smaller_observables(self):
        pair = Region.box(0, 1)
        state = DensityState.from_matrix(pair, np.diag([1.0, 0.0, 0.0, 0.0]))
        assert state(pauli_z(Region.of(1), 1)) == pytest.approx(1.0)
        with pytest.raises(RegionError):
            state(pauli_z(Region.of(4), 4))

    def test_rejects_invalid_density(self):
        with pytest.raises(InvalidStateError):
            DensityState.from_matrix(SITE, np.diag([2.0, -1.0]))

    def test_validation_can_be_skipped(self):
        state = DensityState(LocalOperator.identity(SITE), validate=False)
        assert state(LocalOperator.identity(SITE)) == pytest.approx(2.0)

    def test_repr(self):
        assert repr(DensityState.from_matrix(SITE, np.eye(2) / 2)) == "DensityState(region={0})"


class TestDynamics:
    """Test τ_t for real and imaginary times."""

    def setup_method(self):
        self.spec = DynamicsSpec(pauli_x(SITE, 0), 1.0)

    def test_region_is_generator_region(self):
        assert self.spec.region == SITE

    def test_rejects_non_self_adjoint_generator(self):
        with pytest.raises(ValueError, match="self-adjoint"):
            DynamicsSpec(pauli_string(SITE, [0], [0]), 1.0)

    @pytest.mark.parametrize("beta", [0.0, -2.0])
    def test_rejects_non_positive_beta(self, beta):
        with pytest.raises(ValueError):
            DynamicsSpec(pauli_x(SITE, 0), beta)

    def test_zero_time_is_identity(self):
        z = pauli_z(SITE, 0)
        assert evolve(self.spec, 0, z).allclose(z)

    def test_precession(self):
        t = 0.3
        evolved = evolve(self.spec, t, pauli_z(SITE, 0))
        expected = pauli_z(SITE, 0) * math.cos(2 * t) - pauli_y(SITE, 0) * math.sin(2 * t)
        assert evolved.allclose(expected, atol=1e-12)

    def test_generator_is_conserved(self):
        generator = hamiltonian(transverse_field_ising(Region.box(0, 2)), Region.box(0, 2))
        spec = DynamicsSpec(generator, 1.0)
        assert evolve(spec, 1.7, generator).allclose(generator, atol=1e-12)

    def test_group_property(self):
        a = random_operator(SITE, np.random.default_rng(0))
        twice = evolve(self.spec, 0.4, evolve(self.spec, 0.6, a))
        assert twice.allclose(evolve(self.spec, 1.0, a), atol=1e-12)


class TestKmsCheck:
    """Test the KMS condition of Gibbs states."""

    def test_gibbs_state_satisfies_kms(self):
        region = Region.box(0, 2)
        generator = hamiltonian(transverse_field_ising(region, field=0.3), region)
        spec = DynamicsSpec(generator, 0.8)
        state = DensityState.gibbs(generator, 0.8)
        rng = np.random.default_rng(4)
        for _ in range(3):
            a, b = random_operator(region, rng), random_operator(region, rng)
            assert kms_check(state, spec, a, b) < 1e-10

    def test_mismatched_temperature(self):
        beta = 0.5
        state = DensityState.gibbs(pauli_x(SITE, 0), beta)
        spec = DynamicsSpec(pauli_x(SITE, 0), 2 * beta)
        z = pauli_z(SITE, 0)
        residual = kms_check(state, spec, z, z)
        assert residual == pytest.approx(abs(1 - math.cosh(3 * beta) / math.cosh(beta)))
