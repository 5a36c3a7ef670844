"""Circuit execution on Bloch registers.

Gates are applied as in-place amplitude-pair (or quad) updates through the
kernel layer; the full 2^n x 2^n operator is never materialized. Measurement
projects onto the outcome subspace and renormalizes, so the state endures
and an immediate re-measurement repeats the outcome with certainty.

Index convention, fixed package-wide: flat qubit ``q`` of an n-qubit
register sits at bit position ``n - 1 - q`` of the amplitude index (qubit 0
is the most significant bit, matching tensor-product order). Classical
bitstrings print with flat bit 0 rightmost.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..errors import InvalidOperandError, UnsupportedInstructionError
from ..ir.gates import gate_matrix
from ..ir.types import Barrier, CircuitIR, Conditional, Gate, Measure, Reset
from .breg import BlochRegister, copy_breg, requantize
from .entropy import EntropySource, EntropyStream

#: target-qubit action of each supported controlled gate
_CTRL_BASE = {"cx": "x", "cz": "z"}


@dataclass(frozen=True)
class MeasurementRecord:
    """One projective readout: which qubit, what came out, how likely, which draw."""

    qubit: int
    outcome: int
    probability: float
    draw_index: int


class RegisterLayout:
    """Flat index assignment for the registers declared by a circuit."""

    def __init__(self, ir: CircuitIR):
        self.qubit_offsets = ir.qubit_offsets()
        self.clbit_offsets = ir.clbit_offsets()
        self.creg_sizes = dict(ir.classical_registers)
        self.num_qubits = ir.num_qubits
        self.num_clbits = ir.num_clbits

    def qubit(self, ref) -> int:
        return self.qubit_offsets[ref.register] + ref.index

    def clbit(self, ref) -> int:
        return self.clbit_offsets[ref.register] + ref.index


def _flat_qubit(ref, layout: RegisterLayout | None) -> int:
    if layout is None:
        return ref.index
    return layout.qubit(ref)


def _lower_gate(gate: Gate, layout: RegisterLayout | None, num_qubits: int):
    """Resolve a gate to a kernel dispatch tuple with bit positions."""
    flats = [_flat_qubit(ref, layout) for ref in gate.qubits]
    for q in flats:
        if not 0 <= q < num_qubits:
            raise InvalidOperandError(
                f"gate {gate.name!r} addresses qubit {q} of a {num_qubits}-qubit register"
            )
    if len(set(flats)) != len(flats):
        raise InvalidOperandError(f"gate {gate.name!r} operands must be distinct")
    positions = [num_qubits - 1 - q for q in flats]
    if gate.name in _CTRL_BASE:
        u = gate_matrix(_CTRL_BASE[gate.name], ())
        return ("ctrl", positions[0], positions[1],
                complex(u[0, 0]), complex(u[0, 1]), complex(u[1, 0]), complex(u[1, 1]))
    u = gate_matrix(gate.name, gate.params)
    if u.shape[0] == 2:
        return ("1q", positions[0],
                complex(u[0, 0]), complex(u[0, 1]), complex(u[1, 0]), complex(u[1, 1]))
    return ("2q", positions[0], positions[1], np.ascontiguousarray(u))


def _run_gate_op(breg: BlochRegister, op) -> None:
    kernels = _kernels.active
    kind = op[0]
    if kind == "1q":
        kernels.apply_1q(breg.state, op[1], op[2], op[3], op[4], op[5])
    elif kind == "ctrl":
        kernels.apply_1q_ctrl(breg.state, op[1], op[2], op[3], op[4], op[5], op[6])
    else:
        kernels.apply_2q(breg.state, op[1], op[2], op[3])
    requantize(breg)


def apply_gate(
    breg: BlochRegister, gate: Gate, layout: RegisterLayout | None = None
) -> BlochRegister:
    """Apply one gate in place and return the same register.

    Without a layout, operand indices are taken as flat qubit indices.
    """
    _run_gate_op(breg, _lower_gate(gate, layout, breg.num_qubits))
    return breg


def _measure_position(breg: BlochRegister, pos: int, stream: EntropyStream):
    """Draw an outcome for the qubit at bit position pos and collapse onto it."""
    kernels = _kernels.active
    p0 = kernels.prob_zero(breg.state, pos)
    draw_index = stream.index
    u = stream.next_unit()
    outcome = 0 if u < p0 else 1
    p_out = p0 if outcome == 0 else 1.0 - p0
    scale = 1.0 / math.sqrt(max(p_out, 1e-300))
    kernels.project(breg.state, pos, outcome, scale)
    requantize(breg)
    return outcome, p_out, draw_index


def measure_qubit(
    breg: BlochRegister, q: int, stream: EntropyStream
) -> tuple[int, BlochRegister, MeasurementRecord]:
    """Measure flat qubit q: returns (bit, same register collapsed, record)."""
    n = breg.num_qubits
    if not 0 <= q < n:
        raise InvalidOperandError(f"qubit {q} out of range for {n}-qubit register")
    outcome, p_out, draw_index = _measure_position(breg, n - 1 - q, stream)
    breg.qubit_meta[q].last_measured = outcome
    record = MeasurementRecord(q, outcome, p_out, draw_index)
    return outcome, breg, record


def lower_circuit(ir: CircuitIR) -> list:
    """Pre-resolve a validated circuit into kernel dispatch tuples.

    Done once per circuit so repeated shots skip matrix construction and
    name resolution. Barriers vanish here (execution no-ops).
    """
    layout = RegisterLayout(ir)
    n = layout.num_qubits
    ops = []
    for instr in ir.instructions:
        if isinstance(instr, Gate):
            ops.append(_lower_gate(instr, layout, n))
        elif isinstance(instr, Measure):
            ops.append(("measure", layout.qubit(instr.qubit), layout.clbit(instr.clbit)))
        elif isinstance(instr, Reset):
            ops.append(("reset", layout.qubit(instr.qubit)))
        elif isinstance(instr, Conditional):
            offset = layout.clbit_offsets[instr.register]
            size = layout.creg_sizes[instr.register]
            ops.append(("cond", offset, size, instr.value,
                        _lower_gate(instr.gate, layout, n)))
        elif isinstance(instr, Barrier):
            continue
        else:
            raise UnsupportedInstructionError(f"cannot execute {type(instr).__name__}")
    return ops


def _run_lowered(
    breg: BlochRegister,
    ops: list,
    stream: EntropyStream,
    records: list[MeasurementRecord] | None,
) -> None:
    n = breg.num_qubits
    for op in ops:
        kind = op[0]
        if kind == "measure":
            q, c = op[1], op[2]
            pos = n - 1 - q
            outcome, p_out, draw_index = _measure_position(breg, pos, stream)
            breg.classical_bits[c] = outcome
            breg.qubit_meta[q].last_measured = outcome
            if records is not None:
                records.append(MeasurementRecord(q, outcome, p_out, draw_index))
        elif kind == "reset":
            # measure, then flip back to |0> if the qubit came out 1
            q = op[1]
            pos = n - 1 - q
            outcome, _, _ = _measure_position(breg, pos, stream)
            if outcome:
                _kernels.active.apply_1q(breg.state, pos, 0j, 1 + 0j, 1 + 0j, 0j)
                requantize(breg)
            breg.qubit_meta[q].last_measured = None
        elif kind == "cond":
            _, offset, size, value, gate_op = op
            if breg.classical_value(offset, size) == value:
                _run_gate_op(breg, gate_op)
        else:
            _run_gate_op(breg, op)


def apply_circuit(
    breg: BlochRegister, ir: CircuitIR, stream: EntropyStream
) -> tuple[BlochRegister, list[MeasurementRecord]]:
    """Execute a validated circuit in order on the register, in place.

    Precondition: ``validate(ir)`` is empty and the register's qubit and
    classical-bit counts match the circuit's declarations.
    """
    if breg.num_qubits != ir.num_qubits or breg.num_clbits < ir.num_clbits:
        raise InvalidOperandError(
            f"register ({breg.num_qubits}q/{breg.num_clbits}c) does not fit circuit "
            f"({ir.num_qubits}q/{ir.num_clbits}c)"
        )
    records: list[MeasurementRecord] = []
    _run_lowered(breg, lower_circuit(ir), stream, records)
    return breg, records


def aqic_probabilities(breg: BlochRegister) -> np.ndarray:
    """Direct state readout: |a_k|^2 for every basis index. Leaves the register untouched."""
    return (breg.state.real**2 + breg.state.imag**2).astype(np.float64)


def expectation_z(breg: BlochRegister, q: int) -> float:
    """P(q=0) - P(q=1) from the exact marginals."""
    n = breg.num_qubits
    if not 0 <= q < n:
        raise InvalidOperandError(f"qubit {q} out of range for {n}-qubit register")
    p0 = _kernels.active.prob_zero(breg.state, n - 1 - q)
    return 2.0 * p0 - 1.0


def classical_bitstring(breg: BlochRegister) -> str:
    """Classical bits as text, flat bit 0 rightmost."""
    return "".join("1" if b else "0" for b in reversed(breg.classical_bits))


def sample_shots(
    breg: BlochRegister,
    ir: CircuitIR,
    shots: int,
    entropy: EntropySource,
    workers: int = 1,
) -> dict[str, int]:
    """Histogram of classical bitstrings over repeated full executions.

    Every shot replays the circuit on a fresh copy of the input register
    (copying the classical image is exact), with shot i drawing from entropy
    stream i. The result is therefore independent of worker count and
    completion order. Extra workers only pay off for wide registers where
    the GIL-free kernels dominate; for small circuits keep workers=1.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if breg.num_qubits != ir.num_qubits or breg.num_clbits < ir.num_clbits:
        raise InvalidOperandError(
            f"register ({breg.num_qubits}q/{breg.num_clbits}c) does not fit circuit "
            f"({ir.num_qubits}q/{ir.num_clbits}c)"
        )
    ops = lower_circuit(ir)

    def run_range(lo: int, hi: int) -> Counter:
        counts: Counter = Counter()
        for i in range(lo, hi):
            shot = copy_breg(breg)
            _run_lowered(shot, ops, entropy.stream(i), None)
            counts[classical_bitstring(shot)] += 1
        return counts

    if workers <= 1:
        merged = run_range(0, shots)
    else:
        bounds = np.linspace(0, shots, workers + 1, dtype=int)
        merged = Counter()
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = [
                pool.submit(run_range, int(lo), int(hi))
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if hi > lo
            ]
            for chunk in chunks:
                merged.update(chunk.result())
    return dict(merged)
