"""Gate and circuit data types.

Three gate kinds cover everything the phase-encoded neuron needs: Hadamard,
Pauli X, and the single-qubit phase shift diag(1, e^{i angle}).  Any gate
can carry controls of either polarity: ``controls`` fire on |1>,
``open_controls`` fire on |0>.

Convention used throughout the package: qubit 0 is the most significant
bit of the basis index.  On q qubits, |b0 b1 ... b_{q-1}> has index
sum_k b_k * 2**(q-1-k); for example |101> is index 5.
"""

from __future__ import annotations

from dataclasses import dataclass, field

HADAMARD = "h"
PAULI_X = "x"
PHASE_SHIFT = "phase"

_KINDS = (HADAMARD, PAULI_X, PHASE_SHIFT)


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    angle: float = 0.0
    controls: tuple[int, ...] = ()
    open_controls: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        touched = (self.target,) + self.controls + self.open_controls
        for q in touched:
            if q < 0:
                raise ValueError(f"negative qubit index {q}")
        if self.target in self.controls or self.target in self.open_controls:
            raise ValueError(f"qubit {self.target} is both target and control")
        if len(set(touched)) != len(touched):
            raise ValueError("duplicate qubit in controls")

    @property
    def qubits(self) -> tuple[int, ...]:
        """Every qubit the gate touches (target first)."""
        return (self.target,) + self.controls + self.open_controls


def hadamard(target: int) -> Gate:
    return Gate(HADAMARD, target)


def pauli_x(target: int, controls=(), open_controls=()) -> Gate:
    return Gate(PAULI_X, target, controls=tuple(controls), open_controls=tuple(open_controls))


def phase_shift(angle: float, target: int, controls=(), open_controls=()) -> Gate:
    return Gate(PHASE_SHIFT, target, float(angle), tuple(controls), tuple(open_controls))


@dataclass
class Circuit:
    """An ordered gate list on a fixed qubit count.

    Plain data; application lives in ``phaseneuron.sim.statevector``.
    """

    num_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        for gate in self.gates:
            check_gate_fits(gate, self.num_qubits)

    def count_kind(self, kind: str) -> int:
        """Number of gates of one kind (e.g. phase shifts = basis fragments)."""
        return sum(1 for g in self.gates if g.kind == kind)


def check_gate_fits(gate: Gate, num_qubits: int):
    for q in gate.qubits:
        if q >= num_qubits:
            raise ValueError(
                f"gate touches qubit {q} but the register has {num_qubits} qubits"
            )
