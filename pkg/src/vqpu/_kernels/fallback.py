"""Numpy state-vector kernels.

Drop-in replacement for the compiled module: same functions, same in-place
semantics on a C-contiguous complex128 array. Selected when the extension
is not built or ``VQPU_PURE_PYTHON`` is set.

Bit convention: ``pos`` is the bit position of a qubit inside the amplitude
index, counted from the least significant bit.
"""

from __future__ import annotations

import numpy as np


def _pair_view(amps: np.ndarray, pos: int) -> np.ndarray:
    # shape (blocks, 2, 2**pos); axis 1 is the addressed qubit
    return amps.reshape(-1, 2, 1 << pos)


def apply_1q(amps, pos, u00, u01, u10, u11):
    """Apply a 2x2 unitary to the qubit at bit position pos, in place."""
    v = _pair_view(amps, pos)
    a0 = v[:, 0, :].copy()
    a1 = v[:, 1, :].copy()
    v[:, 0, :] = u00 * a0 + u01 * a1
    v[:, 1, :] = u10 * a0 + u11 * a1


def apply_1q_ctrl(amps, ctrl_pos, pos, u00, u01, u10, u11):
    """Apply a 2x2 unitary to the qubit at pos where the control bit is 1, in place."""
    idx = np.arange(amps.shape[0])
    i0 = idx[(((idx >> ctrl_pos) & 1) == 1) & (((idx >> pos) & 1) == 0)]
    i1 = i0 | (1 << pos)
    a0 = amps[i0]
    a1 = amps[i1]
    amps[i0] = u00 * a0 + u01 * a1
    amps[i1] = u10 * a0 + u11 * a1


def apply_2q(amps, pos_a, pos_b, u):
    """Apply a 4x4 unitary to the qubit pair (pos_a, pos_b), in place.

    Row/column index of ``u`` is ``2*a + b`` where a is the bit at pos_a and
    b the bit at pos_b.
    """
    idx = np.arange(amps.shape[0])
    base = idx[(((idx >> pos_a) & 1) == 0) & (((idx >> pos_b) & 1) == 0)]
    quads = (
        base,
        base | (1 << pos_b),
        base | (1 << pos_a),
        base | (1 << pos_a) | (1 << pos_b),
    )
    olds = [amps[g] for g in quads]  # fancy indexing copies
    for row, g in enumerate(quads):
        amps[g] = (
            u[row, 0] * olds[0]
            + u[row, 1] * olds[1]
            + u[row, 2] * olds[2]
            + u[row, 3] * olds[3]
        )


def prob_zero(amps, pos):
    """Total probability of the qubit at pos reading 0."""
    v = _pair_view(amps, pos)[:, 0, :]
    return float(np.sum(v.real * v.real + v.imag * v.imag))


def project(amps, pos, outcome, scale):
    """Zero the non-matching half for the qubit at pos and rescale the rest, in place."""
    v = _pair_view(amps, pos)
    v[:, 1 - outcome, :] = 0.0
    amps *= scale


def quantize(amps, step):
    """Round every component to the nearest multiple of step (half-to-even), in place.

    Returns the sum of squared magnitudes after rounding so the caller can
    renormalize or detect collapse.
    """
    comps = amps.view(np.float64)
    comps[:] = np.round(comps / step) * step
    return float(np.sum(comps * comps))


def sumsq(amps):
    """Sum of squared magnitudes."""
    return float(np.sum(amps.real * amps.real + amps.imag * amps.imag))


def scale(amps, factor):
    """Multiply every amplitude by a real factor, in place."""
    amps *= factor
