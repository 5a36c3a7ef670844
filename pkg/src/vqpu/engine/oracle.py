"""Brute-force dense-matrix reference for gate-only circuits.

Builds the full 2^n x 2^n product of Kronecker-embedded gate matrices:
deliberately independent of the kernel layer (dense numpy matrices and
explicit permutations instead of amplitude-pair updates), so the two paths
cross-check each other.
"""

from __future__ import annotations

import numpy as np

from ..errors import CapacityExceededError, UnsupportedInstructionError
from ..ir.gates import gate_matrix
from ..ir.types import Barrier, CircuitIR, Gate
from ..limits import ORACLE_MAX_QUBITS
from .executor import RegisterLayout


def _embed_1q(u: np.ndarray, q: int, n: int) -> np.ndarray:
    """I(2^q) kron U kron I(2^(n-q-1)): qubit 0 is the most significant bit."""
    left = np.eye(1 << q, dtype=np.complex128)
    right = np.eye(1 << (n - q - 1), dtype=np.complex128)
    return np.kron(np.kron(left, u), right)


def _move_to_front_permutation(qa: int, qb: int, n: int) -> np.ndarray:
    """Permutation matrix reordering basis labels so (qa, qb) become qubits (0, 1)."""
    dim = 1 << n
    rest = [q for q in range(n) if q not in (qa, qb)]
    perm = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(dim):
        bits = [(i >> (n - 1 - q)) & 1 for q in range(n)]
        new_order = [bits[qa], bits[qb]] + [bits[q] for q in rest]
        j = 0
        for b in new_order:
            j = (j << 1) | b
        perm[j, i] = 1.0
    return perm


def _embed_2q(u: np.ndarray, qa: int, qb: int, n: int) -> np.ndarray:
    perm = _move_to_front_permutation(qa, qb, n)
    rest = np.eye(1 << (n - 2), dtype=np.complex128)
    return perm.T @ np.kron(u, rest) @ perm


def full_circuit_unitary(ir: CircuitIR, max_qubits: int = ORACLE_MAX_QUBITS) -> np.ndarray:
    """The whole circuit as one dense unitary.

    Only gates and barriers are representable; measurements, resets and
    conditionals have no unitary and raise UnsupportedInstructionError.
    """
    n = ir.num_qubits
    if n < 1 or n > max_qubits:
        raise CapacityExceededError(
            f"dense oracle limited to [1, {max_qubits}] qubits, circuit has {n}"
        )
    layout = RegisterLayout(ir)
    total = np.eye(1 << n, dtype=np.complex128)
    for instr in ir.instructions:
        if isinstance(instr, Barrier):
            continue
        if not isinstance(instr, Gate):
            raise UnsupportedInstructionError(
                f"{type(instr).__name__} has no unitary representation"
            )
        u = gate_matrix(instr.name, instr.params)
        flats = [layout.qubit(ref) for ref in instr.qubits]
        if u.shape[0] == 2:
            step = _embed_1q(u, flats[0], n)
        else:
            step = _embed_2q(u, flats[0], flats[1], n)
        total = step @ total
    return total
