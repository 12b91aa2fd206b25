"""Minimal statevector simulator: three gate kinds, controls of either
polarity, exact amplitudes, seeded single-qubit readout."""

from .gates import (
    HADAMARD,
    PAULI_X,
    PHASE_SHIFT,
    Circuit,
    Gate,
    hadamard,
    pauli_x,
    phase_shift,
)
from .statevector import (
    DEFAULT_MAX_QUBITS,
    EPS_STATE,
    apply_circuit,
    apply_gate,
    new_zero_state,
    qubit_count,
    qubit_one_probability,
    sample_counts,
)

__all__ = [
    "HADAMARD",
    "PAULI_X",
    "PHASE_SHIFT",
    "Circuit",
    "Gate",
    "hadamard",
    "pauli_x",
    "phase_shift",
    "DEFAULT_MAX_QUBITS",
    "EPS_STATE",
    "apply_circuit",
    "apply_gate",
    "new_zero_state",
    "qubit_count",
    "qubit_one_probability",
    "sample_counts",
]
