"""Phase-encoded quantum neuron: simulation, training, and noise analysis.

A neuron over n qubits stores its input and weights as phase vectors of
length 2**n.  The activation is the probability of finding an ancilla in
|1> after an input circuit, a weight circuit, and a multi-controlled NOT;
a closed form over pairwise phase differences gives the same number
without simulating anything.  This package implements both routes, the
small statevector simulator behind the circuit route, SPSA training on
top of the activation, synthetic and digit-image datasets, and the exact
mean activation under uniform phase noise.
"""

from .encoding import (
    as_phase_vector,
    basis_phase_subcircuit,
    build_input_circuit,
    build_weight_circuit,
    normalize_grayscale,
    phase_qubit_count,
    reduce_global_phase,
)
from .learning import (
    SpsaConfig,
    TrainResult,
    assign_label,
    classification_accuracy,
    cost_labels,
    cost_single_target,
    expand_weights,
    spsa_minimize,
    train_classifier,
)
from .neuron import (
    ActivationResult,
    activation_closed_form,
    activation_sampled,
    activation_statevector,
    inner_product,
    pairwise_activation_matrix,
)
from .noise import (
    McEstimate,
    NoiseConfig,
    damping_factor,
    mean_activation_general,
    mean_activation_identical,
    mean_activation_small_width,
    monte_carlo_noisy_activation,
)

__version__ = "0.1.0"

__all__ = [
    "ActivationResult",
    "McEstimate",
    "NoiseConfig",
    "SpsaConfig",
    "TrainResult",
    "activation_closed_form",
    "activation_sampled",
    "activation_statevector",
    "as_phase_vector",
    "assign_label",
    "basis_phase_subcircuit",
    "build_input_circuit",
    "build_weight_circuit",
    "classification_accuracy",
    "cost_labels",
    "cost_single_target",
    "damping_factor",
    "expand_weights",
    "inner_product",
    "mean_activation_general",
    "mean_activation_identical",
    "mean_activation_small_width",
    "monte_carlo_noisy_activation",
    "normalize_grayscale",
    "pairwise_activation_matrix",
    "phase_qubit_count",
    "reduce_global_phase",
    "spsa_minimize",
    "train_classifier",
    "__version__",
]
