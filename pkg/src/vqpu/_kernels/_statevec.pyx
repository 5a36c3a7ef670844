# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled state-vector kernels.

Mirrors ``fallback.py`` exactly: in-place updates on a C-contiguous
complex128 array, ``pos`` counted from the least significant index bit.
Pair loops enumerate k in [0, dim/2) and insert a zero bit at ``pos`` to
form the lower index of each amplitude pair.
"""

from libc.math cimport rint


cdef inline Py_ssize_t _pair_index(Py_ssize_t k, int pos, Py_ssize_t low_mask) nogil:
    return ((k >> pos) << (pos + 1)) | (k & low_mask)


def apply_1q(double complex[::1] amps, int pos,
             double complex u00, double complex u01,
             double complex u10, double complex u11):
    """Apply a 2x2 unitary to the qubit at bit position pos, in place."""
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t step = (<Py_ssize_t>1) << pos
    cdef Py_ssize_t low_mask = step - 1
    cdef Py_ssize_t k, i, j
    cdef double complex a0, a1
    with nogil:
        for k in range(half):
            i = _pair_index(k, pos, low_mask)
            j = i | step
            a0 = amps[i]
            a1 = amps[j]
            amps[i] = u00 * a0 + u01 * a1
            amps[j] = u10 * a0 + u11 * a1


def apply_1q_ctrl(double complex[::1] amps, int ctrl_pos, int pos,
                  double complex u00, double complex u01,
                  double complex u10, double complex u11):
    """Apply a 2x2 unitary to the qubit at pos where the control bit is 1, in place."""
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t step = (<Py_ssize_t>1) << pos
    cdef Py_ssize_t low_mask = step - 1
    cdef Py_ssize_t cmask = (<Py_ssize_t>1) << ctrl_pos
    cdef Py_ssize_t k, i, j
    cdef double complex a0, a1
    with nogil:
        for k in range(half):
            i = _pair_index(k, pos, low_mask)
            if not (i & cmask):
                continue
            j = i | step
            a0 = amps[i]
            a1 = amps[j]
            amps[i] = u00 * a0 + u01 * a1
            amps[j] = u10 * a0 + u11 * a1


def apply_2q(double complex[::1] amps, int pos_a, int pos_b,
             double complex[:, ::1] u):
    """Apply a 4x4 unitary to the qubit pair (pos_a, pos_b), in place.

    Row/column index of ``u`` is ``2*a + b`` where a is the bit at pos_a and
    b the bit at pos_b.
    """
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t ma = (<Py_ssize_t>1) << pos_a
    cdef Py_ssize_t mb = (<Py_ssize_t>1) << pos_b
    cdef Py_ssize_t k, i01, i10, i11
    cdef double complex a00, a01, a10, a11
    with nogil:
        for k in range(dim):
            if (k & ma) or (k & mb):
                continue
            i01 = k | mb
            i10 = k | ma
            i11 = k | ma | mb
            a00 = amps[k]
            a01 = amps[i01]
            a10 = amps[i10]
            a11 = amps[i11]
            amps[k] = u[0, 0] * a00 + u[0, 1] * a01 + u[0, 2] * a10 + u[0, 3] * a11
            amps[i01] = u[1, 0] * a00 + u[1, 1] * a01 + u[1, 2] * a10 + u[1, 3] * a11
            amps[i10] = u[2, 0] * a00 + u[2, 1] * a01 + u[2, 2] * a10 + u[2, 3] * a11
            amps[i11] = u[3, 0] * a00 + u[3, 1] * a01 + u[3, 2] * a10 + u[3, 3] * a11


def prob_zero(double complex[::1] amps, int pos):
    """Total probability of the qubit at pos reading 0."""
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t step = (<Py_ssize_t>1) << pos
    cdef Py_ssize_t low_mask = step - 1
    cdef Py_ssize_t k, i
    cdef double acc = 0.0
    cdef double re, im
    with nogil:
        for k in range(half):
            i = _pair_index(k, pos, low_mask)
            re = amps[i].real
            im = amps[i].imag
            acc += re * re + im * im
    return acc


def project(double complex[::1] amps, int pos, int outcome, double scale):
    """Zero the non-matching half for the qubit at pos and rescale the rest, in place."""
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t step = (<Py_ssize_t>1) << pos
    cdef Py_ssize_t low_mask = step - 1
    cdef Py_ssize_t k, i, j
    cdef bint keep_one = outcome != 0
    with nogil:
        for k in range(half):
            i = _pair_index(k, pos, low_mask)
            j = i | step
            if keep_one:
                amps[i] = 0.0
                amps[j] = amps[j] * scale
            else:
                amps[i] = amps[i] * scale
                amps[j] = 0.0


def quantize(double complex[::1] amps, double step):
    """Round every component to the nearest multiple of step (half-to-even), in place.

    Returns the sum of squared magnitudes after rounding. rint uses the
    default IEEE round-to-nearest-even mode.
    """
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t i
    cdef double re, im
    cdef double acc = 0.0
    with nogil:
        for i in range(dim):
            re = rint(amps[i].real / step) * step
            im = rint(amps[i].imag / step) * step
            amps[i] = re + im * 1j
            acc += re * re + im * im
    return acc


def sumsq(double complex[::1] amps):
    """Sum of squared magnitudes."""
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t i
    cdef double acc = 0.0
    cdef double re, im
    with nogil:
        for i in range(dim):
            re = amps[i].real
            im = amps[i].imag
            acc += re * re + im * im
    return acc


def scale(double complex[::1] amps, double factor):
    """Multiply every amplitude by a real factor, in place."""
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t i
    with nogil:
        for i in range(dim):
            amps[i] = amps[i] * factor
