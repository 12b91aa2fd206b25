"""Encoding circuits vs direct state construction."""

import math

import numpy as np
import pytest

from phaseneuron.encoding import (
    as_phase_vector,
    basis_phase_subcircuit,
    build_input_circuit,
    build_weight_circuit,
    normalize_grayscale,
    phase_qubit_count,
    reduce_global_phase,
)
from phaseneuron.neuron import activation_closed_form, inner_product
from phaseneuron.sim import HADAMARD, PAULI_X, PHASE_SHIFT, apply_circuit, new_zero_state

import oracles


class TestInputCircuit:
    @pytest.mark.parametrize("num_qubits", [1, 2, 3, 4])
    def test_prepares_encoded_state(self, num_qubits):
        rng = np.random.default_rng(80 + num_qubits)
        for _ in range(10):
            phases = rng.uniform(-math.pi, math.pi, size=1 << num_qubits)
            circuit = build_input_circuit(phases)
            state = apply_circuit(new_zero_state(num_qubits), circuit)
            expected = oracles.input_state_reference(phases)
            assert np.max(np.abs(state - expected)) < 1e-12

    def test_dense_matrix_agrees_too(self):
        phases = np.array([0.3, -1.2, 2.5, 0.0])
        circuit = build_input_circuit(phases)
        state = oracles.apply_circuit_dense(circuit, new_zero_state(2))
        assert np.max(np.abs(state - oracles.input_state_reference(phases))) < 1e-12

    def test_gate_order_hadamards_first(self):
        circuit = build_input_circuit(np.array([0.1, 0.2, 0.3, 0.4]))
        kinds = [g.kind for g in circuit.gates[:2]]
        assert kinds == [HADAMARD, HADAMARD]
        # Ascending fragment order: phase angles appear as given.
        angles = [g.angle for g in circuit.gates if g.kind == PHASE_SHIFT]
        assert angles == [0.1, 0.2, 0.3, 0.4]


class TestWeightCircuit:
    def test_fragment_diagonal(self):
        phases = np.array([0.4, -0.9, 1.3, 2.2])
        from phaseneuron.sim import Circuit

        gates = []
        for k, angle in enumerate(phases):
            gates += basis_phase_subcircuit(k, -float(angle), 2)
        matrix = oracles.circuit_matrix(Circuit(2, gates))
        expected = np.diag(oracles.weight_diagonal_reference(phases))
        assert np.max(np.abs(matrix - expected)) < 1e-12

    @pytest.mark.parametrize("num_qubits", [1, 2, 3])
    def test_all_ones_amplitude_is_inner_product(self, num_qubits):
        rng = np.random.default_rng(90 + num_qubits)
        n_amps = 1 << num_qubits
        theta = rng.uniform(-math.pi, math.pi, size=n_amps)
        phi = rng.uniform(-math.pi, math.pi, size=n_amps)
        state = apply_circuit(new_zero_state(num_qubits), build_input_circuit(theta))
        state = apply_circuit(state, build_weight_circuit(phi))
        expected = inner_product(theta, phi)
        assert abs(state[n_amps - 1] - expected) < 1e-12


class TestBasisPhaseSubcircuit:
    def test_structure_for_index_five_on_three_qubits(self):
        # 5 = 101: qubit 1 carries the only zero bit, so only it is flipped.
        gates = basis_phase_subcircuit(5, 0.7, 3)
        assert [g.kind for g in gates] == [PAULI_X, PHASE_SHIFT, PAULI_X]
        assert gates[0].target == 1 and gates[2].target == 1
        shift = gates[1]
        assert shift.target == 2
        assert shift.controls == (0, 1)
        assert shift.angle == 0.7

    def test_all_ones_index_needs_no_flips(self):
        gates = basis_phase_subcircuit(7, 0.2, 3)
        assert [g.kind for g in gates] == [PHASE_SHIFT]

    def test_single_qubit_shift_is_uncontrolled(self):
        gates = basis_phase_subcircuit(1, 0.3, 1)
        assert len(gates) == 1
        assert gates[0].controls == ()

    def test_each_fragment_touches_one_amplitude(self):
        from phaseneuron.sim import Circuit

        for index in range(8):
            matrix = oracles.circuit_matrix(
                Circuit(3, basis_phase_subcircuit(index, 1.1, 3))
            )
            expected = np.eye(8, dtype=np.complex128)
            expected[index, index] = np.exp(1.1j)
            assert np.max(np.abs(matrix - expected)) < 1e-12

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            basis_phase_subcircuit(8, 0.1, 3)
        with pytest.raises(ValueError):
            basis_phase_subcircuit(-1, 0.1, 3)


class TestGateCounts:
    def test_zero_angle_fragments_are_skipped(self):
        circuit = build_input_circuit(np.array([0.0, 0.5, 0.0, 0.25]))
        assert circuit.count_kind(PHASE_SHIFT) == 2
        kept = build_input_circuit(np.array([0.0, 0.5, 0.0, 0.25]), skip_zero=False)
        assert kept.count_kind(PHASE_SHIFT) == 4

    def test_full_fragment_and_hadamard_counts(self):
        for num_qubits in (1, 2, 3, 4):
            phases = np.full(1 << num_qubits, 0.3)
            circuit = build_input_circuit(phases)
            assert circuit.count_kind(HADAMARD) == num_qubits
            assert circuit.count_kind(PHASE_SHIFT) == 1 << num_qubits

    def test_reduced_vector_drops_at_least_one_fragment(self):
        rng = np.random.default_rng(101)
        for num_qubits in (1, 2, 3):
            phases = rng.uniform(0.1, 1.0, size=1 << num_qubits)
            reduced = reduce_global_phase(phases)
            circuit = build_input_circuit(reduced)
            assert circuit.count_kind(PHASE_SHIFT) <= (1 << num_qubits) - 1


class TestGrayscaleNormalization:
    def test_reference_intensities(self):
        phases = normalize_grayscale(np.array([[255, 170], [85, 0]]))
        expected = np.array([math.pi / 2, math.pi / 3, math.pi / 6, 0.0])
        assert np.max(np.abs(phases - expected)) < 1e-12

    def test_row_major_flattening(self):
        phases = normalize_grayscale(np.array([[0, 51], [102, 255]]))
        assert phases[1] == 51 * (math.pi / 2) / 255
        assert phases[3] == math.pi / 2

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            normalize_grayscale(np.array([[0, 256], [1, 2]]))
        with pytest.raises(ValueError):
            normalize_grayscale(np.array([[-1, 0], [1, 2]]))

    def test_rejects_non_power_of_two_pixel_count(self):
        with pytest.raises(ValueError):
            normalize_grayscale(np.zeros((28, 28)))
        with pytest.raises(ValueError):
            normalize_grayscale(np.array([]))


class TestPhaseVectors:
    def test_qubit_counts(self):
        assert phase_qubit_count(2) == 1
        assert phase_qubit_count(4) == 2
        assert phase_qubit_count(1024) == 10
        for bad in (0, 1, 3, 6, 1023):
            with pytest.raises(ValueError):
                phase_qubit_count(bad)

    def test_vector_validation(self):
        with pytest.raises(ValueError):
            as_phase_vector(np.zeros((2, 2)))
        with pytest.raises(ValueError):
            as_phase_vector([0.1, 0.2, 0.3])
        with pytest.raises(ValueError):
            as_phase_vector([0.1, math.nan])

    def test_reduce_global_phase_zeroes_first_entry(self):
        reduced = reduce_global_phase([0.4, 1.0, 2.0, 0.9])
        assert reduced[0] == 0.0
        assert np.allclose(reduced, [0.0, 0.6, 1.6, 0.5])

    def test_reduce_global_phase_keeps_activation(self):
        rng = np.random.default_rng(111)
        theta = rng.uniform(-2.0, 2.0, size=8)
        phi = rng.uniform(-2.0, 2.0, size=8)
        before = activation_closed_form(theta, phi)
        after = activation_closed_form(reduce_global_phase(theta), phi)
        assert abs(before - after) < 1e-14
