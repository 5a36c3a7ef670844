"""Semantic validation of circuit IRs.

The parser already rejects everything it can see; this pass re-checks the
same invariants on arbitrary IR values (including programmatically built
ones, which carry no source positions) and adds the engine capacity check.
An empty result means the IR satisfies every invariant.
"""

from __future__ import annotations

import math

from ..limits import DEFAULT_MAX_QUBITS
from .gates import CONTROLLED_GATES, GATE_SPECS
from .types import (
    Barrier,
    CircuitIR,
    Conditional,
    Diagnostic,
    Gate,
    Measure,
    Reset,
)


def _pos(instr) -> tuple[int, int]:
    return instr.pos if instr.pos is not None else (0, 0)


class _Checker:
    def __init__(self, ir: CircuitIR, max_qubits: int):
        self.ir = ir
        self.max_qubits = max_qubits
        self.diags: list[Diagnostic] = []
        self.qregs = dict(ir.quantum_registers)
        self.cregs = dict(ir.classical_registers)

    def add(self, code, message, pos, severity="error"):
        self.diags.append(Diagnostic(severity, code, message, pos[0], pos[1]))

    def check_registers(self):
        seen = set()
        for name, size in (*self.ir.quantum_registers, *self.ir.classical_registers):
            if name in seen:
                self.add("duplicate-register", f"register {name!r} declared twice", (0, 0))
            seen.add(name)
            if size < 1:
                self.add("register-size", f"register {name!r} must have size >= 1", (0, 0))
        if self.ir.num_qubits > self.max_qubits:
            self.add(
                "capacity-exceeded",
                f"circuit needs {self.ir.num_qubits} qubits, engine maximum is "
                f"{self.max_qubits}",
                (0, 0),
            )

    def check_qubit(self, ref, pos) -> bool:
        size = self.qregs.get(ref.register)
        if size is None:
            kind = "operand-kind" if ref.register in self.cregs else "undeclared-register"
            self.add(kind, f"{ref.register!r} is not a quantum register", pos)
            return False
        if not 0 <= ref.index < size:
            self.add("index-out-of-range",
                     f"index {ref.index} out of range for {ref.register}[{size}]", pos)
            return False
        return True

    def check_clbit(self, ref, pos) -> bool:
        size = self.cregs.get(ref.register)
        if size is None:
            kind = "operand-kind" if ref.register in self.qregs else "undeclared-register"
            self.add(kind, f"{ref.register!r} is not a classical register", pos)
            return False
        if not 0 <= ref.index < size:
            self.add("index-out-of-range",
                     f"index {ref.index} out of range for {ref.register}[{size}]", pos)
            return False
        return True

    def check_gate(self, gate: Gate, pos):
        spec = GATE_SPECS.get(gate.name)
        if spec is None:
            self.add("unknown-gate", f"unknown gate {gate.name!r}", pos)
            return
        n_params, n_qubits = spec
        if len(gate.params) != n_params:
            self.add("arity-mismatch",
                     f"gate {gate.name!r} takes {n_params} parameter(s), "
                     f"got {len(gate.params)}", pos)
        if any(not math.isfinite(p) for p in gate.params):
            self.add("invalid-parameter", f"gate {gate.name!r} has a non-finite parameter",
                     pos)
        refs = gate.qubits
        if len(refs) != n_qubits:
            self.add("arity-mismatch",
                     f"gate {gate.name!r} takes {n_qubits} operand(s), got {len(refs)}",
                     pos)
        elif gate.name in CONTROLLED_GATES and len(gate.controls) != 1:
            self.add("arity-mismatch",
                     f"gate {gate.name!r} requires exactly one control operand", pos)
        if len(set(refs)) != len(refs):
            self.add("duplicate-operand",
                     f"gate {gate.name!r} operands must be distinct qubits", pos)
        for ref in refs:
            self.check_qubit(ref, pos)

    def run(self) -> list[Diagnostic]:
        self.check_registers()
        for instr in self.ir.instructions:
            pos = _pos(instr)
            if isinstance(instr, Gate):
                self.check_gate(instr, pos)
            elif isinstance(instr, Measure):
                self.check_qubit(instr.qubit, pos)
                self.check_clbit(instr.clbit, pos)
            elif isinstance(instr, Reset):
                self.check_qubit(instr.qubit, pos)
            elif isinstance(instr, Conditional):
                size = self.cregs.get(instr.register)
                if size is None:
                    self.add("undeclared-register",
                             f"conditional register {instr.register!r} is not declared",
                             pos)
                else:
                    if instr.value < 0:
                        self.add("invalid-parameter",
                                 "conditional comparison value must be unsigned", pos)
                    elif instr.value >= (1 << size):
                        self.add("conditional-value",
                                 f"comparison value {instr.value} can never match a "
                                 f"{size}-bit register", pos, severity="warning")
                self.check_gate(instr.gate, pos)
            elif isinstance(instr, Barrier):
                for ref in instr.qubits:
                    self.check_qubit(ref, pos)
            else:
                self.add("unsupported-construct",
                         f"unknown instruction type {type(instr).__name__}", (0, 0))
        return self.diags


def validate(ir: CircuitIR, max_qubits: int = DEFAULT_MAX_QUBITS) -> list[Diagnostic]:
    """All invariant violations in the IR; empty iff the circuit is runnable."""
    return _Checker(ir, max_qubits).run()
