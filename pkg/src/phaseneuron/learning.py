"""Threshold classification on the neuron's activation and SPSA training.

The neuron fires (label 1) when the activation strictly exceeds a
threshold.  Costs are squared errors: (1 - f)^2 against a single target
input, or the mean squared label error over a dataset, which for 0/1
labels is exactly the misclassification rate.  Training uses
simultaneous-perturbation stochastic approximation (SPSA): two cost
probes per iteration along a random +-1 direction, with the standard
decaying gain schedules.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .datasets import BIAS_4D, DIRECT_2D, IMAGE, LabeledDataset, encode_features
from .neuron import activation_closed_form


@dataclass(frozen=True)
class SpsaConfig:
    """SPSA hyperparameters.

    Gains follow the standard schedules a_k = a0 / (k + 1 + A)**alpha and
    c_k = c0 / (k + 1)**gamma; the defaults are the usual practitioner
    values (alpha = 0.602, gamma = 0.101, A about 10% of the iteration
    budget).  ``batch_size`` caps how many samples each cost evaluation
    sees (None = full batch).
    """

    iterations: int = 200
    a0: float = 0.5
    c0: float = 0.2
    A: float = 10.0
    alpha: float = 0.602
    gamma: float = 0.101
    seed: int = 0
    batch_size: int | None = None

    def __post_init__(self):
        if self.iterations < 0:
            raise ValueError(f"iterations must be >= 0, got {self.iterations}")
        if self.a0 <= 0 or self.c0 <= 0:
            raise ValueError("gain scales a0 and c0 must be > 0")
        if self.A < 0:
            raise ValueError(f"stability constant A must be >= 0, got {self.A}")
        if self.batch_size is not None and self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")


@dataclass
class TrainResult:
    final_weights: np.ndarray
    cost_trace: list[tuple[int, float]]  # (iteration, cost); entry 0 is the start
    test_metrics: dict | None = None


def assign_label(activation: float, threshold: float) -> int:
    """1 if the activation strictly exceeds the threshold, else 0."""
    return 1 if activation > threshold else 0


def cost_single_target(theta, phi) -> float:
    """(1 - f)^2: zero exactly when the weights reproduce the target input
    (up to a constant phase shift)."""
    r = 1.0 - activation_closed_form(theta, phi)
    return r * r


def cost_labels(dataset: LabeledDataset, weights, threshold: float) -> float:
    """Mean squared label error of the thresholded neuron over a dataset.

    Labels and predictions are 0/1, so this equals the misclassified
    fraction.
    """
    w = np.asarray(weights, dtype=np.float64)
    total = 0
    for row, label in zip(dataset.samples, dataset.labels):
        f = activation_closed_form(encode_features(row, dataset.encoding), w)
        total += (int(label) - assign_label(f, threshold)) ** 2
    return total / len(dataset)


def classification_accuracy(dataset: LabeledDataset, weights, threshold: float) -> float:
    """Fraction of samples whose assigned label matches the true label."""
    w = np.asarray(weights, dtype=np.float64)
    hits = 0
    for row, label in zip(dataset.samples, dataset.labels):
        f = activation_closed_form(encode_features(row, dataset.encoding), w)
        hits += int(assign_label(f, threshold) == int(label))
    return hits / len(dataset)


def spsa_minimize(cost, init, config: SpsaConfig) -> TrainResult:
    """Minimize a (possibly noisy) scalar cost over a flat parameter vector.

    Per iteration: probe cost at w +- c_k * delta for a random +-1 vector
    delta, step along the estimated gradient, then record the cost of the
    new iterate in the trace (entry 0 is the starting point).  Because the
    cost may be noisy, the returned weights are the best recorded iterate,
    not necessarily the last one.  All randomness comes from one PCG64
    stream seeded by config.seed.
    """
    w = np.array(init, dtype=np.float64)
    if w.ndim != 1 or w.size == 0:
        raise ValueError(f"init must be a nonempty flat vector, got shape {w.shape}")
    rng = np.random.Generator(np.random.PCG64(config.seed))

    trace = [(0, float(cost(w)))]
    best_w = w.copy()
    best_cost = trace[0][1]
    for k in range(config.iterations):
        a_k = config.a0 / (k + 1 + config.A) ** config.alpha
        c_k = config.c0 / (k + 1) ** config.gamma
        delta = rng.integers(0, 2, size=w.size) * 2 - 1
        plus = cost(w + c_k * delta)
        minus = cost(w - c_k * delta)
        # 1/delta_i == delta_i for +-1 entries.
        gradient = (plus - minus) / (2.0 * c_k) * delta
        w = w - a_k * gradient
        current = float(cost(w))
        trace.append((k + 1, current))
        if current < best_cost:
            best_cost = current
            best_w = w.copy()
    return TrainResult(best_w, trace, None)


def _free_parameter_count(encoding: str, sample_dim: int) -> int:
    if encoding == DIRECT_2D:
        return 2
    if encoding == BIAS_4D:
        return 3
    if encoding == IMAGE:
        return sample_dim
    raise ValueError(f"unknown encoding {encoding!r}")


def expand_weights(free, encoding: str) -> np.ndarray:
    """Free training parameters -> full weight phase vector.

    bias-4d trains (w1, w2, bias) inside (0, w1, w2, bias); the other
    encodings train the full vector directly.
    """
    v = np.asarray(free, dtype=np.float64)
    if encoding == BIAS_4D:
        if v.shape != (3,):
            raise ValueError(f"bias-4d trains 3 parameters, got shape {v.shape}")
        return np.array([0.0, v[0], v[1], v[2]])
    return v.copy()


def train_classifier(
    train: LabeledDataset,
    config: SpsaConfig,
    threshold: float,
    test: LabeledDataset | None = None,
) -> TrainResult:
    """SPSA-train neuron weights to classify a labeled dataset.

    The number of free parameters follows the dataset encoding.  Weights
    start uniform in [0, pi/2]; initialization and batch draws use RNG
    streams spawned from config.seed (the perturbation stream inside
    spsa_minimize uses config.seed directly), so a config fixes the whole
    run.  When ``batch_size`` is set, every cost evaluation scores a fresh
    random subset, which makes the recorded trace noisy (the returned
    weights are the best recorded iterate).  ``final_weights`` in the
    result is the expanded full weight vector; test metrics (cost,
    accuracy, threshold) are attached when a test set is given.
    """
    if len(train) < 1:
        raise ValueError("empty training set")
    encoded = np.stack(
        [encode_features(row, train.encoding) for row in train.samples]
    )
    labels = train.labels.astype(np.int64)
    m = encoded.shape[0]

    init_seq, batch_seq = np.random.SeedSequence(config.seed).spawn(2)
    init_rng = np.random.Generator(np.random.PCG64(init_seq))
    batch_rng = np.random.Generator(np.random.PCG64(batch_seq))

    free_count = _free_parameter_count(train.encoding, encoded.shape[1])
    init = init_rng.uniform(0.0, np.pi / 2.0, size=free_count)

    use_batches = config.batch_size is not None and config.batch_size < m

    def batch_cost(free):
        full = expand_weights(free, train.encoding)
        if use_batches:
            idx = batch_rng.choice(m, size=config.batch_size, replace=False)
        else:
            idx = np.arange(m)
        errors = 0
        for i in idx:
            f = activation_closed_form(encoded[i], full)
            errors += (int(labels[i]) - assign_label(f, threshold)) ** 2
        return errors / len(idx)

    result = spsa_minimize(batch_cost, init, config)
    full_weights = expand_weights(result.final_weights, train.encoding)

    metrics = None
    if test is not None:
        metrics = {
            "cost": cost_labels(test, full_weights, threshold),
            "accuracy": classification_accuracy(test, full_weights, threshold),
            "threshold": threshold,
        }
    return TrainResult(full_weights, result.cost_trace, metrics)
