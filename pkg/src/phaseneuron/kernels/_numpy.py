"""Numpy fallback kernels.

Same function surface and semantics as the compiled extension
(``phaseneuron.kernels._compiled``); used whenever the extension is not
built or is disabled via PHASENEURON_KERNELS=numpy.
"""

import numpy as np

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def _selected(n_amps, target_mask, on_mask, off_mask, target_value):
    # Basis indices whose target bit equals target_value and whose control
    # bits are all 1 (on_mask) resp. all 0 (off_mask).
    idx = np.arange(n_amps, dtype=np.int64)
    if target_value:
        sel = (idx & target_mask) != 0
    else:
        sel = (idx & target_mask) == 0
    if on_mask:
        sel &= (idx & on_mask) == on_mask
    if off_mask:
        sel &= (idx & off_mask) == 0
    return idx[sel]


def apply_hadamard(amps, target_mask, on_mask, off_mask):
    i0 = _selected(amps.shape[0], target_mask, on_mask, off_mask, 0)
    i1 = i0 | target_mask
    a0 = amps[i0]
    a1 = amps[i1]
    amps[i0] = (a0 + a1) * _INV_SQRT2
    amps[i1] = (a0 - a1) * _INV_SQRT2


def apply_pauli_x(amps, target_mask, on_mask, off_mask):
    i0 = _selected(amps.shape[0], target_mask, on_mask, off_mask, 0)
    i1 = i0 | target_mask
    a0 = amps[i0]
    amps[i0] = amps[i1]
    amps[i1] = a0


def apply_phase_shift(amps, target_mask, on_mask, off_mask, angle):
    i1 = _selected(amps.shape[0], target_mask, on_mask, off_mask, 1)
    amps[i1] *= complex(np.cos(angle), np.sin(angle))


def pairwise_cos_sum(deltas):
    """Sum of cos(deltas[j] - deltas[i]) over all index pairs i < j.

    cos is even, so the full difference matrix counts every pair twice and
    adds cos(0) = 1 per diagonal entry; (total - n) / 2 undoes both.
    """
    d = np.asarray(deltas, dtype=np.float64)
    total = np.cos(d[None, :] - d[:, None]).sum()
    return float((total - d.size) / 2.0)
