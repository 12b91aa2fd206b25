"""Mean activation under uniform phase noise.

Model: every input phase is perturbed independently by
delta ~ Uniform[-a/2, a/2] where ``a`` ("width") is the full width of the
interval.  Averaging the activation over the noise attenuates each pairwise
cosine by the factor D(a) = 2 (1 - cos a) / a**2 and leaves the constant
term alone.  The module provides the exact averaged formulas, the small-width
expansion, and a seeded Monte Carlo estimator to check them against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .neuron import _matched_pair

# Trials per Monte Carlo shard; shard RNGs are spawned from the master seed
# so the estimate is independent of how shards are scheduled or combined.
MC_SHARD_SIZE = 1 << 15


@dataclass(frozen=True)
class NoiseConfig:
    """Uniform noise of full width ``width`` (the interval is
    [-width/2, +width/2]); width 0 is the degenerate noiseless case."""

    width: float
    trials: int = 1
    seed: int = 0

    def __post_init__(self):
        if not math.isfinite(self.width) or self.width < 0.0:
            raise ValueError(f"noise width must be finite and >= 0, got {self.width}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


class McEstimate(NamedTuple):
    mean: float
    std_error: float


def damping_factor(width: float) -> float:
    """D(a) = 2 (1 - cos a) / a**2, the attenuation of every pairwise cosine.

    Evaluated as (sin(a/2) / (a/2))**2, the same quantity without the
    1 - cos cancellation; D(0) = 1 exactly (noiseless branch).
    """
    if width == 0.0:
        return 1.0
    half = 0.5 * width
    s = math.sin(half) / half
    return s * s


def _check_qubits(num_qubits: int):
    if num_qubits < 1:
        raise ValueError(f"num_qubits must be >= 1, got {num_qubits}")


def mean_activation_identical(num_qubits: int, width: float) -> float:
    """Exact mean activation for matched weights (weights equal the clean input):

        <f> = 1/2**n + (2**n - 1)/2**(n-1) * (1 - cos a) / a**2

    Returns exactly 1 for width 0.
    """
    _check_qubits(num_qubits)
    if width < 0.0:
        raise ValueError(f"width must be >= 0, got {width}")
    if width == 0.0:
        return 1.0
    size = 1 << num_qubits
    g = 0.5 * damping_factor(width)  # (1 - cos a) / a**2
    return 1.0 / size + (size - 1) / (size >> 1) * g


def mean_activation_small_width(num_qubits: int, width: float) -> float:
    """Leading-order expansion of the matched-weights mean:

        <f> ~= 1 - (2**n - 1)/2**n * a**2 / 12

    Good to ~1e-4 absolute for a <= 0.2 at small n (the truncation error
    grows like a**4).
    """
    _check_qubits(num_qubits)
    size = 1 << num_qubits
    return 1.0 - (size - 1) / size * width * width / 12.0


def mean_activation_general(theta, phi, width: float) -> float:
    """Exact mean activation for arbitrary weights: the noiseless closed form
    with every pairwise cosine attenuated by D(a).

    width 0 multiplies by exactly 1, recovering the noiseless activation.
    """
    if width < 0.0:
        raise ValueError(f"width must be >= 0, got {width}")
    t, p = _matched_pair(theta, phi)
    d = (t - t[0]) - (p - p[0])
    size = d.size
    s = kernels.pairwise_cos_sum(d)
    value = 1.0 / size + damping_factor(width) * s / (size * size / 2.0)
    # Same [0, 1] pin as the noiseless closed form, so that width 0
    # reproduces it bit for bit.
    return min(1.0, max(0.0, value))


def _batch_activation(thetas: np.ndarray, phi: np.ndarray) -> np.ndarray:
    # Closed-form activation of many inputs (rows) against one weight vector,
    # mirroring activation_closed_form including the leading-entry shifts.
    tt = thetas - thetas[:, :1]
    d = tt - (phi - phi[0])
    size = d.shape[1]
    total = np.zeros(d.shape[0])
    for j in range(1, size):
        for i in range(j):
            total += np.cos(d[:, j] - d[:, i])
    return 1.0 / size + total / (size * size / 2.0)


def monte_carlo_noisy_activation(theta, phi, config: NoiseConfig) -> McEstimate:
    """Empirical mean activation under the noise model.

    Each trial draws a fresh perturbation vector and evaluates the
    closed-form activation of (theta + delta, phi).  Trials run in
    fixed-size shards whose generators are spawned from the master seed,
    and shard partials are combined with exact summation (math.fsum), so
    the result does not depend on shard evaluation or reduction order.
    Returns the mean and the standard error of the mean (0 for one trial).
    """
    t, p = _matched_pair(theta, phi)
    half = 0.5 * config.width
    total_trials = config.trials
    num_shards = (total_trials + MC_SHARD_SIZE - 1) // MC_SHARD_SIZE
    shard_seeds = np.random.SeedSequence(config.seed).spawn(num_shards)

    sums = []
    square_sums = []
    done = 0
    for shard_seed in shard_seeds:
        count = min(MC_SHARD_SIZE, total_trials - done)
        rng = np.random.Generator(np.random.PCG64(shard_seed))
        delta = rng.uniform(-half, half, size=(count, t.size))
        values = _batch_activation(t + delta, p)
        sums.append(float(np.sum(values)))
        square_sums.append(float(np.sum(values * values)))
        done += count

    mean = math.fsum(sums) / total_trials
    if total_trials > 1:
        variance = (math.fsum(square_sums) - total_trials * mean * mean) / (
            total_trials - 1
        )
        std_error = math.sqrt(max(0.0, variance) / total_trials)
    else:
        std_error = 0.0
    return McEstimate(mean, std_error)
