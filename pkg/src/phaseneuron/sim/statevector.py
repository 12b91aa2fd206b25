"""Statevector allocation, gate application, and single-qubit readout.

States are 1-D complex128 arrays of length 2**q, basis states ordered by
increasing index with qubit 0 as the most significant bit.  Application
functions never mutate their input: they copy once and run the in-place
kernels on the copy, so callers can treat states as values.
"""

from __future__ import annotations

import numpy as np

from .. import kernels
from . import gates as g

# Norm drift tolerated over any circuit of up to ~100 gates.  All three gate
# kinds are unitary, so drift is pure float roundoff.
EPS_STATE = 1e-10

# Guards against accidental huge allocations (2**24 amplitudes = 256 MiB).
DEFAULT_MAX_QUBITS = 24


def new_zero_state(num_qubits: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Fresh |0...0> on ``num_qubits`` qubits."""
    if num_qubits < 1 or num_qubits > max_qubits:
        raise ValueError(
            f"num_qubits must be in [1, {max_qubits}], got {num_qubits}"
        )
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return amps


def qubit_count(state: np.ndarray) -> int:
    """Number of qubits of a state; validates the length is a power of two."""
    size = state.shape[0]
    q = size.bit_length() - 1
    if size < 2 or (1 << q) != size:
        raise ValueError(f"state length {size} is not a power of two >= 2")
    return q


def _masks(gate: g.Gate, num_qubits: int):
    # Qubit k occupies bit (q-1-k) of the basis index.
    target_mask = 1 << (num_qubits - 1 - gate.target)
    on_mask = 0
    for c in gate.controls:
        on_mask |= 1 << (num_qubits - 1 - c)
    off_mask = 0
    for c in gate.open_controls:
        off_mask |= 1 << (num_qubits - 1 - c)
    return target_mask, on_mask, off_mask


def _apply_inplace(amps: np.ndarray, gate: g.Gate, num_qubits: int):
    target_mask, on_mask, off_mask = _masks(gate, num_qubits)
    if gate.kind == g.HADAMARD:
        kernels.apply_hadamard(amps, target_mask, on_mask, off_mask)
    elif gate.kind == g.PAULI_X:
        kernels.apply_pauli_x(amps, target_mask, on_mask, off_mask)
    else:
        kernels.apply_phase_shift(amps, target_mask, on_mask, off_mask, gate.angle)


def apply_gate(state: np.ndarray, gate: g.Gate) -> np.ndarray:
    """Return a fresh state with one gate applied."""
    q = qubit_count(state)
    g.check_gate_fits(gate, q)
    out = np.array(state, dtype=np.complex128)
    _apply_inplace(out, gate, q)
    return out


def apply_circuit(state: np.ndarray, circuit: g.Circuit) -> np.ndarray:
    """Return a fresh state with every gate of the circuit applied in order."""
    q = qubit_count(state)
    if circuit.num_qubits != q:
        raise ValueError(
            f"circuit is on {circuit.num_qubits} qubits but the state has {q}"
        )
    out = np.array(state, dtype=np.complex128)
    for gate in circuit.gates:
        _apply_inplace(out, gate, q)
    return out


def qubit_one_probability(state: np.ndarray, qubit: int) -> float:
    """Probability of reading 1 on one qubit: sum of |amp|^2 where its bit is set.

    Clamped into [0, 1] so roundoff can never produce an illegal probability.
    """
    q = qubit_count(state)
    if qubit < 0 or qubit >= q:
        raise ValueError(f"qubit {qubit} out of range for a {q}-qubit state")
    bit = q - 1 - qubit
    ones_half = state.reshape(-1, 2 << bit)[:, 1 << bit :]
    p = float(np.sum(np.abs(ones_half) ** 2))
    return min(1.0, max(0.0, p))


def sample_counts(state: np.ndarray, qubit: int, shots: int, seed: int):
    """Simulated repeated readout of one qubit: returns (ones, zeros).

    Counts come from a single binomial draw of numpy's PCG64 generator, the
    pinned portable noise source: a fixed seed reproduces the same counts on
    any platform.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    p = qubit_one_probability(state, qubit)
    rng = np.random.Generator(np.random.PCG64(seed))
    ones = int(rng.binomial(shots, p))
    return ones, shots - ones
