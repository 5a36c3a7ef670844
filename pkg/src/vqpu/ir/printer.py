"""Canonical QASM text from a circuit IR.

Formatting is deterministic and chosen so that ``parse_qasm(emit_qasm(ir))``
reproduces a structurally equal IR: floats print via ``repr`` (shortest
round-trip form), operands are always fully indexed.
"""

from __future__ import annotations

from .types import Barrier, CircuitIR, Conditional, Gate, Measure, Reset


def _fmt_param(value: float) -> str:
    return repr(float(value))


def _fmt_gate(gate: Gate) -> str:
    head = gate.name
    if gate.params:
        head += "(" + ",".join(_fmt_param(p) for p in gate.params) + ")"
    args = ",".join(str(ref) for ref in gate.qubits)
    return f"{head} {args};"


def emit_qasm(ir: CircuitIR) -> str:
    """Render the IR as canonical OPENQASM 2.0 text."""
    lines = ["OPENQASM 2.0;"]
    for name, size in ir.quantum_registers:
        lines.append(f"qreg {name}[{size}];")
    for name, size in ir.classical_registers:
        lines.append(f"creg {name}[{size}];")
    for instr in ir.instructions:
        if isinstance(instr, Gate):
            lines.append(_fmt_gate(instr))
        elif isinstance(instr, Measure):
            lines.append(f"measure {instr.qubit} -> {instr.clbit};")
        elif isinstance(instr, Reset):
            lines.append(f"reset {instr.qubit};")
        elif isinstance(instr, Conditional):
            lines.append(f"if ({instr.register}=={instr.value}) {_fmt_gate(instr.gate)}")
        elif isinstance(instr, Barrier):
            args = ",".join(str(ref) for ref in instr.qubits)
            lines.append(f"barrier {args};")
        else:
            raise TypeError(f"unknown instruction {instr!r}")
    return "\n".join(lines) + "\n"
