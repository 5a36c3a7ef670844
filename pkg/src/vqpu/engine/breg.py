"""Bloch registers: classical bits stored next to the image of a quantum state.

The register owns one contiguous complex128 buffer for the state vector;
engine steps mutate it in place, so the buffer allocated at job start is the
buffer measured at job end. Use ``copy_breg`` for an independent register.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .. import _kernels
from ..bloch import BlochAngles, PrecisionMode, angles_to_state, zero_state
from ..errors import CapacityExceededError, InvalidAnglesError, QuantizationCollapseError
from ..limits import DEFAULT_MAX_QUBITS


@dataclass
class QubitMeta:
    """Per-qubit bookkeeping: declared storage resolution, last readout."""

    resolution_bits: int | None = None
    last_measured: int | None = None


@dataclass
class BlochRegister:
    """Unified register file: an n-qubit state image plus classical bits."""

    state: np.ndarray
    classical_bits: list[int]
    precision: PrecisionMode = field(default_factory=PrecisionMode.full)
    qubit_meta: list[QubitMeta] = field(default_factory=list)

    @property
    def num_qubits(self) -> int:
        return int(self.state.shape[0]).bit_length() - 1

    @property
    def num_clbits(self) -> int:
        return len(self.classical_bits)

    def classical_value(self, offset: int, size: int) -> int:
        """Little-endian integer value of a classical register slice (bit 0 is LSB)."""
        value = 0
        for i in range(size):
            value |= (self.classical_bits[offset + i] & 1) << i
        return value


def requantize(breg: BlochRegister) -> None:
    """Snap the state back onto the fixed-point grid and renormalize, in place.

    No-op in full precision. Called after every engine step in fixed mode so
    the stored image never exceeds the declared resolution.
    """
    if not breg.precision.is_fixed:
        return
    total = _kernels.active.quantize(breg.state, breg.precision.step)
    if total <= 0.0:
        raise QuantizationCollapseError(
            f"state collapsed to zero at {breg.precision} resolution"
        )
    _kernels.active.scale(breg.state, 1.0 / np.sqrt(total))


def init_qubits(
    num_qubits: int,
    angles: list[BlochAngles] | None = None,
    classical_bits: int = 0,
    precision: PrecisionMode | None = None,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> BlochRegister:
    """Allocate a register with each qubit prepared at its Bloch angles.

    The joint state is the tensor product of the per-qubit states, with
    qubit 0 as the most significant bit of the amplitude index. ``angles``
    defaults to all qubits at the north pole (|0...0>).
    """
    if num_qubits < 1 or num_qubits > max_qubits:
        raise CapacityExceededError(
            f"num_qubits={num_qubits} outside [1, {max_qubits}]"
        )
    precision = precision or PrecisionMode.full()
    if angles is None:
        state = zero_state(num_qubits)
    else:
        if len(angles) != num_qubits:
            raise InvalidAnglesError(
                f"got {len(angles)} angle pairs for {num_qubits} qubits"
            )
        state = reduce(np.kron, (angles_to_state(a) for a in angles))
        state = np.ascontiguousarray(state, dtype=np.complex128)
    breg = BlochRegister(
        state=state,
        classical_bits=[0] * classical_bits,
        precision=precision,
        qubit_meta=[QubitMeta(resolution_bits=precision.bits) for _ in range(num_qubits)],
    )
    requantize(breg)
    return breg


def copy_breg(breg: BlochRegister) -> BlochRegister:
    """Deep, bit-identical copy; mutating the copy never touches the original."""
    return BlochRegister(
        state=breg.state.copy(),
        classical_bits=list(breg.classical_bits),
        precision=breg.precision,
        qubit_meta=[
            QubitMeta(m.resolution_bits, m.last_measured) for m in breg.qubit_meta
        ],
    )
