"""Activation routes: closed form, statevector circuit, sampled shots."""

import math

import numpy as np
import pytest

from phaseneuron.neuron import (
    activation_closed_form,
    activation_sampled,
    activation_statevector,
    inner_product,
    pairwise_activation_matrix,
)

import oracles

CHECKERBOARD = np.array([math.pi / 2, 0.0, 0.0, math.pi / 2])

# f((pi/5, 0, pi/3, 0.1), checkerboard), frozen from the dense references
# in oracles.py (modulus and pairwise routes agree to ~2e-16).
KNOWN_ACTIVATION = 0.35409446741994655


class TestRouteAgreement:
    @pytest.mark.parametrize("num_qubits", [1, 2, 3])
    def test_closed_form_matches_circuit(self, num_qubits):
        rng = np.random.default_rng(120 + num_qubits)
        for _ in range(10):
            theta = rng.uniform(-math.pi, math.pi, size=1 << num_qubits)
            phi = rng.uniform(-math.pi, math.pi, size=1 << num_qubits)
            closed = activation_closed_form(theta, phi)
            ancilla = activation_statevector(theta, phi).value
            direct = activation_statevector(theta, phi, use_ancilla=False).value
            assert abs(closed - ancilla) < 1e-10
            assert abs(closed - direct) < 1e-10

    def test_closed_form_matches_modulus_reference(self):
        rng = np.random.default_rng(130)
        for size in (2, 4, 8, 16, 64):
            theta = rng.uniform(-6.0, 6.0, size=size)
            phi = rng.uniform(-6.0, 6.0, size=size)
            expected = oracles.activation_modulus_reference(theta, phi)
            assert abs(activation_closed_form(theta, phi) - expected) < 1e-12

    def test_activation_is_squared_inner_product(self):
        rng = np.random.default_rng(131)
        theta = rng.uniform(-3.0, 3.0, size=8)
        phi = rng.uniform(-3.0, 3.0, size=8)
        overlap = inner_product(theta, phi)
        assert abs(activation_closed_form(theta, phi) - abs(overlap) ** 2) < 1e-12

    def test_known_value_on_all_routes(self):
        theta = np.array([math.pi / 5, 0.0, math.pi / 3, 0.1])
        assert abs(activation_closed_form(theta, CHECKERBOARD) - KNOWN_ACTIVATION) < 1e-12
        assert (
            abs(activation_statevector(theta, CHECKERBOARD).value - KNOWN_ACTIVATION)
            < 1e-12
        )
        sampled = activation_sampled(theta, CHECKERBOARD, 8192, seed=3)
        bound = 3.0 * math.sqrt(KNOWN_ACTIVATION * (1 - KNOWN_ACTIVATION) / 8192)
        assert abs(sampled.value - KNOWN_ACTIVATION) < bound


class TestSpecialValues:
    def test_identical_vectors_give_exactly_one(self):
        rng = np.random.default_rng(140)
        for size in (2, 4, 8, 32):
            theta = rng.uniform(-math.pi, math.pi, size=size)
            assert activation_closed_form(theta, theta) == 1.0

    def test_checkerboard_against_negated_weights_is_zero(self):
        assert activation_closed_form(CHECKERBOARD, -CHECKERBOARD) == 0.0

    def test_opposite_single_qubit_phases_give_zero(self):
        assert activation_closed_form(np.array([0.0, math.pi]), np.zeros(2)) == 0.0

    def test_range_is_unit_interval(self):
        rng = np.random.default_rng(141)
        for _ in range(200):
            size = 1 << int(rng.integers(1, 5))
            theta = rng.uniform(-10.0, 10.0, size=size)
            phi = rng.uniform(-10.0, 10.0, size=size)
            f = activation_closed_form(theta, phi)
            assert 0.0 <= f <= 1.0


class TestShiftInvariance:
    def test_constant_shift_is_bitwise_exact_on_dyadic_grid(self):
        # Phases on a 2**-15 grid stay exactly representable under the
        # shifts, so the internal difference vector is bit-identical.
        rng = np.random.default_rng(150)
        for _ in range(50):
            size = 1 << int(rng.integers(1, 4))
            theta = rng.integers(-(1 << 18), 1 << 18, size=size) * 2.0**-15
            phi = rng.integers(-(1 << 18), 1 << 18, size=size) * 2.0**-15
            shift = int(rng.integers(-(1 << 10), 1 << 10)) * 2.0**-15
            base = activation_closed_form(theta, phi)
            assert activation_closed_form(theta + shift, phi) == base
            assert activation_closed_form(theta, phi + shift) == base
            assert activation_closed_form(theta + shift, phi + shift) == base

    def test_arbitrary_shift_is_close(self):
        rng = np.random.default_rng(151)
        theta = rng.uniform(-math.pi, math.pi, size=8)
        phi = rng.uniform(-math.pi, math.pi, size=8)
        base = activation_closed_form(theta, phi)
        shifted = activation_closed_form(theta + 0.123456789, phi)
        assert abs(base - shifted) < 1e-13


class TestSymmetry:
    def test_swapping_arguments_is_close(self):
        rng = np.random.default_rng(160)
        theta = rng.uniform(-math.pi, math.pi, size=8)
        phi = rng.uniform(-math.pi, math.pi, size=8)
        a = activation_closed_form(theta, phi)
        b = activation_closed_form(phi, theta)
        assert abs(a - b) < 1e-14

    def test_pairwise_matrix_is_exactly_symmetric_with_unit_diagonal(self):
        rng = np.random.default_rng(161)
        samples = rng.uniform(0.0, math.pi / 2.0, size=(6, 4))
        matrix = pairwise_activation_matrix(samples)
        assert matrix.shape == (6, 6)
        assert np.array_equal(matrix, matrix.T)
        assert np.array_equal(np.diag(matrix), np.ones(6))
        assert np.all((matrix >= 0.0) & (matrix <= 1.0))


class TestSampling:
    def test_deterministic_in_seed(self):
        theta = np.array([0.2, 0.4, 0.6, 0.8])
        a = activation_sampled(theta, CHECKERBOARD, 8192, seed=7)
        b = activation_sampled(theta, CHECKERBOARD, 8192, seed=7)
        c = activation_sampled(theta, CHECKERBOARD, 8192, seed=8)
        assert a.value == b.value
        assert a.value != c.value

    def test_result_metadata(self):
        result = activation_sampled(np.zeros(2), np.zeros(2), 100, seed=1)
        assert result.shots == 100
        assert result.seed == 1
        assert result.method == "sampled"
        assert result.value == 1.0  # identical vectors: every shot reads 1


class TestValidation:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            activation_closed_form(np.zeros(4), np.zeros(8))

    def test_non_power_of_two(self):
        with pytest.raises(ValueError):
            activation_closed_form(np.zeros(3), np.zeros(3))

    def test_non_finite(self):
        with pytest.raises(ValueError):
            activation_closed_form(np.array([0.0, math.inf]), np.zeros(2))
