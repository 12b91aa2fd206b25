"""Activation of the phase-encoded neuron.

Three routes to the same number:

* ``activation_closed_form``  -- pairwise cosine sum, no circuit;
* ``activation_statevector``  -- run the full circuit, read the ancilla;
* ``activation_sampled``      -- same circuit, finite seeded shots.

The activation is the squared modulus of the input/weight state overlap,
so it is symmetric in its arguments and invariant under a constant shift
of either phase vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .encoding import (
    as_phase_vector,
    basis_phase_subcircuit,
    build_input_circuit,
    build_weight_circuit,
    phase_qubit_count,
)
from .sim import (
    Circuit,
    apply_circuit,
    hadamard,
    new_zero_state,
    pauli_x,
    qubit_one_probability,
    sample_counts,
)

CLOSED_FORM = "closed-form"
STATEVECTOR = "statevector"
SAMPLED = "sampled"


@dataclass(frozen=True)
class ActivationResult:
    value: float
    method: str
    shots: int | None = None
    seed: int | None = None


def _matched_pair(theta, phi):
    t = as_phase_vector(theta)
    p = as_phase_vector(phi)
    if t.size != p.size:
        raise ValueError(
            f"input has {t.size} phases but weight has {p.size}"
        )
    return t, p


def inner_product(theta, phi) -> complex:
    """Overlap of the weight state with the input state:
    (1/2**n) * sum_k exp(i (theta_k - phi_k))."""
    t, p = _matched_pair(theta, phi)
    return complex(np.mean(np.exp(1j * (t - p))))


def activation_closed_form(theta, phi) -> float:
    """f(theta, phi) = 1/2**n + (1/2**(2n-1)) * sum_{i<j} cos(d_j - d_i)
    with d = theta - phi.

    Both vectors are first shifted by their own leading entry.  The
    activation is invariant under such shifts, and doing it here makes the
    invariance hold bit-for-bit whenever a constant offset on the input is
    exactly representable: the pairwise differences, and hence every term
    of the sum, come out identical.
    """
    t, p = _matched_pair(theta, phi)
    d = (t - t[0]) - (p - p[0])
    size = d.size
    s = kernels.pairwise_cos_sum(d)
    value = 1.0 / size + s / (size * size / 2.0)
    # Rounding can push a mathematically-zero sum to ~ -1e-17; the
    # activation is a probability, so pin it to [0, 1].
    return min(1.0, max(0.0, value))


def _neuron_circuit(t: np.ndarray, p: np.ndarray, n: int) -> Circuit:
    # Input encoding, inverse weight encoding, multi-controlled NOT onto the
    # ancilla (qubit n).  The ancilla's one-probability is the activation.
    gate_list = list(build_input_circuit(t).gates)
    gate_list += build_weight_circuit(p).gates
    gate_list.append(pauli_x(n, controls=tuple(range(n))))
    return Circuit(n + 1, gate_list)


def activation_statevector(theta, phi, use_ancilla: bool = True) -> ActivationResult:
    """Exact activation from the simulated circuit.

    Default route: ancilla readout after a multi-controlled NOT.  With
    use_ancilla=False the ancilla and final NOT are dropped and the
    activation is read as |amplitude of |0...0>|^2 right after the inverse
    phase fragments and Hadamards; kept as an equivalence check of the two
    readout rules.
    """
    t, p = _matched_pair(theta, phi)
    n = phase_qubit_count(t.size)
    if use_ancilla:
        state = apply_circuit(new_zero_state(n + 1), _neuron_circuit(t, p, n))
        value = qubit_one_probability(state, n)
    else:
        gate_list = list(build_input_circuit(t).gates)
        for k, angle in enumerate(p):
            if angle == 0.0:
                continue
            gate_list += basis_phase_subcircuit(k, -float(angle), n)
        gate_list += [hadamard(k) for k in range(n)]
        state = apply_circuit(new_zero_state(n), Circuit(n, gate_list))
        value = float(abs(state[0]) ** 2)
    return ActivationResult(float(value), STATEVECTOR)


def activation_sampled(theta, phi, shots: int, seed: int) -> ActivationResult:
    """Activation estimated from finite simulated shots on the ancilla."""
    t, p = _matched_pair(theta, phi)
    n = phase_qubit_count(t.size)
    state = apply_circuit(new_zero_state(n + 1), _neuron_circuit(t, p, n))
    ones, _ = sample_counts(state, n, shots, seed)
    return ActivationResult(ones / shots, SAMPLED, shots=shots, seed=seed)


def pairwise_activation_matrix(samples) -> np.ndarray:
    """Closed-form activation of every sample against every other.

    Symmetric with an exact unit diagonal; rows/columns follow the sample
    order.  Useful as a similarity (confusion) matrix between encoded
    inputs.
    """
    arr = np.asarray(samples, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D array of samples, got shape {arr.shape}")
    m = arr.shape[0]
    out = np.ones((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            out[i, j] = out[j, i] = activation_closed_form(arr[i], arr[j])
    return out
