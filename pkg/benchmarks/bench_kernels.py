"""Compare the compiled kernels against the numpy fallback.

Times the three gate kernels on statevectors of growing size and the
pairwise cosine sum on growing phase vectors, then prints one table with
the speedup of the compiled path.  Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import math
import time

import numpy as np

from phaseneuron.kernels import _numpy

try:
    from phaseneuron.kernels import _compiled
except ImportError:
    raise SystemExit(
        "compiled extension not built; run 'python3 setup.py build_ext --inplace'"
    )


def _fresh_state(num_qubits, rng):
    n = 1 << num_qubits
    amps = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    amps /= np.linalg.norm(amps)
    return np.ascontiguousarray(amps, dtype=np.complex128)


def _time(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_gates(num_qubits, repeats=25):
    rng = np.random.Generator(np.random.PCG64(7))
    target_mask = 1 << (num_qubits - 1)
    control_mask = (1 << num_qubits) - 1 - target_mask
    rows = []
    for label, call in (
        ("hadamard", lambda mod, amps: mod.apply_hadamard(amps, target_mask, 0, 0)),
        ("pauli-x", lambda mod, amps: mod.apply_pauli_x(amps, target_mask, 0, 0)),
        (
            "ctrl-phase",
            lambda mod, amps: mod.apply_phase_shift(
                amps, target_mask, control_mask, 0, 0.7853981633974483
            ),
        ),
    ):
        timings = []
        for mod in (_compiled, _numpy):
            amps = _fresh_state(num_qubits, rng)
            timings.append(_time(lambda: call(mod, amps), repeats))
        rows.append((f"{label} ({num_qubits}q)", *timings))
    return rows


def bench_pairwise(size, repeats=25):
    rng = np.random.Generator(np.random.PCG64(11))
    deltas = rng.uniform(0.0, 2.0 * math.pi, size)
    timings = [
        _time(lambda: mod.pairwise_cos_sum(deltas), repeats)
        for mod in (_compiled, _numpy)
    ]
    return [(f"pairwise-cos (N={size})", *timings)]


def format_row(name, compiled_s, numpy_s):
    speedup = numpy_s / compiled_s if compiled_s > 0 else math.inf
    return f"{name:<24} {compiled_s * 1e6:>12.1f} {numpy_s * 1e6:>12.1f} {speedup:>9.2f}x"


def run():
    rows = []
    for num_qubits in (10, 14, 18):
        rows.extend(bench_gates(num_qubits))
    for size in (64, 256, 1024, 4096):
        rows.extend(bench_pairwise(size))

    print(f"{'kernel':<24} {'compiled us':>12} {'numpy us':>12} {'speedup':>10}")
    print("-" * 60)
    for row in rows:
        print(format_row(*row))


if __name__ == "__main__":
    run()
