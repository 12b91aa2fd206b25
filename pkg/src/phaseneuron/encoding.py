"""Phase encoding of data and the circuits that prepare it.

A data point is a vector of N = 2**n real phases.  Its encoded state is the
uniform superposition with phase theta_k on basis state |k>:

    (1/2**(n/2)) * sum_k exp(i theta_k) |k>

``build_input_circuit`` prepares that state from |0...0>; for weights,
``build_weight_circuit`` applies the inverse encoding so that the
all-ones amplitude carries the input/weight inner product.  Grayscale
images enter through ``normalize_grayscale``, which maps 8-bit intensity
linearly onto [0, pi/2] (full white = pi/2).
"""

from __future__ import annotations

import numpy as np

from .sim import Circuit, Gate, hadamard, pauli_x, phase_shift


def as_phase_vector(phases) -> np.ndarray:
    """Validate and return a float64 phase vector (length a power of two >= 2)."""
    v = np.asarray(phases, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"phase vector must be 1-D, got shape {v.shape}")
    phase_qubit_count(v.size)
    if not np.all(np.isfinite(v)):
        raise ValueError("phase vector contains non-finite values")
    return v


def phase_qubit_count(num_phases: int) -> int:
    """n such that 2**n == num_phases; rejects lengths that are not powers of two."""
    n = int(num_phases).bit_length() - 1
    if num_phases < 2 or (1 << n) != num_phases:
        raise ValueError(
            f"phase vector length must be a power of two >= 2, got {num_phases}"
        )
    return n


def normalize_grayscale(image) -> np.ndarray:
    """Map 8-bit grayscale intensities to phases: 0 -> 0, 255 -> pi/2, linear.

    The image is flattened row-major (top-left pixel first); the pixel count
    must be a power of two, so 28x28 inputs are padded or pooled first.
    """
    arr = np.asarray(image)
    if arr.size == 0:
        raise ValueError("empty image")
    values = arr.astype(np.float64).ravel(order="C")
    if values.min() < 0 or values.max() > 255:
        raise ValueError("intensities must lie in [0, 255]")
    phase_qubit_count(values.size)
    return values * (np.pi / 2.0) / 255.0


def reduce_global_phase(phases) -> np.ndarray:
    """Shift a phase vector so its first entry is 0.

    The encoded state changes only by a global phase, so every activation
    built on it is unchanged; the zeroed entry lets the circuit builders
    drop one fragment.
    """
    v = as_phase_vector(phases)
    return v - v[0]


def basis_phase_subcircuit(basis_index: int, angle: float, num_qubits: int) -> list[Gate]:
    """Gates that multiply exactly one basis state's amplitude by e^{i angle}.

    X gates flip every qubit whose bit in ``basis_index`` is 0, a phase
    shift on the last qubit controlled on all the others then fires only
    for what was |basis_index>, and the X layer undoes the flips.  For a
    single qubit the phase shift is uncontrolled.
    """
    n = num_qubits
    if n < 1:
        raise ValueError("need at least one qubit")
    if basis_index < 0 or basis_index >= (1 << n):
        raise ValueError(f"basis index {basis_index} out of range for {n} qubits")
    flips = [k for k in range(n) if not (basis_index >> (n - 1 - k)) & 1]
    x_layer = [pauli_x(k) for k in flips]
    shift = phase_shift(angle, target=n - 1, controls=tuple(range(n - 1)))
    return x_layer + [shift] + x_layer


def build_input_circuit(phases, skip_zero: bool = True) -> Circuit:
    """Circuit preparing the encoded input state from |0...0>.

    Hadamard on every qubit, then one phase fragment per basis state in
    ascending index order.  Fragments with angle exactly 0 are identities
    and are skipped by default; after ``reduce_global_phase`` this leaves at
    most 2**n - 1 fragments.  Pass skip_zero=False to keep all 2**n (for
    gate-count studies).
    """
    v = as_phase_vector(phases)
    n = phase_qubit_count(v.size)
    gate_list = [hadamard(k) for k in range(n)]
    for k, angle in enumerate(v):
        if skip_zero and angle == 0.0:
            continue
        gate_list += basis_phase_subcircuit(k, float(angle), n)
    return Circuit(n, gate_list)


def build_weight_circuit(phases, skip_zero: bool = True) -> Circuit:
    """Circuit mapping the encoded weight state to |1...1> (up to global phase).

    The inverse phase fragments (negated angles, ascending index; the order
    is free since diagonal gates commute), then Hadamard and X on every
    qubit.  Applied after ``build_input_circuit``, the amplitude of |1...1>
    equals the input/weight inner product.
    """
    v = as_phase_vector(phases)
    n = phase_qubit_count(v.size)
    gate_list: list[Gate] = []
    for k, angle in enumerate(v):
        if skip_zero and angle == 0.0:
            continue
        gate_list += basis_phase_subcircuit(k, -float(angle), n)
    gate_list += [hadamard(k) for k in range(n)]
    gate_list += [pauli_x(k) for k in range(n)]
    return Circuit(n, gate_list)
