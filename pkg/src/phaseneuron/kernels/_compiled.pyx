# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the statevector gate loops and the pairwise cosine
sum.  Same function surface and semantics as phaseneuron.kernels._numpy.

Gate kernels mutate the amplitude buffer in place; the caller owns it
exclusively while a kernel runs.  Masks address bits of the basis index
(qubit 0 is the most significant bit, so its mask is 2**(q-1)).
"""

from libc.math cimport cos, sin

cdef double _INV_SQRT2 = 0.7071067811865476


def apply_hadamard(double complex[::1] amps,
                   unsigned long long target_mask,
                   unsigned long long on_mask,
                   unsigned long long off_mask):
    cdef unsigned long long n = <unsigned long long> amps.shape[0]
    cdef unsigned long long i, j
    cdef double complex a0, a1
    for i in range(n):
        if (i & target_mask) == 0 and (i & on_mask) == on_mask and (i & off_mask) == 0:
            j = i | target_mask
            a0 = amps[i]
            a1 = amps[j]
            amps[i] = (a0 + a1) * _INV_SQRT2
            amps[j] = (a0 - a1) * _INV_SQRT2


def apply_pauli_x(double complex[::1] amps,
                  unsigned long long target_mask,
                  unsigned long long on_mask,
                  unsigned long long off_mask):
    cdef unsigned long long n = <unsigned long long> amps.shape[0]
    cdef unsigned long long i, j
    cdef double complex a0
    for i in range(n):
        if (i & target_mask) == 0 and (i & on_mask) == on_mask and (i & off_mask) == 0:
            j = i | target_mask
            a0 = amps[i]
            amps[i] = amps[j]
            amps[j] = a0


def apply_phase_shift(double complex[::1] amps,
                      unsigned long long target_mask,
                      unsigned long long on_mask,
                      unsigned long long off_mask,
                      double angle):
    cdef unsigned long long n = <unsigned long long> amps.shape[0]
    cdef unsigned long long i
    cdef double complex phase = cos(angle) + 1j * sin(angle)
    for i in range(n):
        if (i & target_mask) != 0 and (i & on_mask) == on_mask and (i & off_mask) == 0:
            amps[i] = amps[i] * phase


def pairwise_cos_sum(double[::1] deltas):
    """Sum of cos(deltas[j] - deltas[i]) over all index pairs i < j."""
    cdef Py_ssize_t n = deltas.shape[0]
    cdef Py_ssize_t i, j
    cdef double total = 0.0
    cdef double dj
    for j in range(1, n):
        dj = deltas[j]
        for i in range(j):
            total += cos(dj - deltas[i])
    return total
