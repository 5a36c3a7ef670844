"""QASM-subset intermediate representation: parse, validate, print, gate matrices."""

from .gates import CONTROLLED_GATES, GATE_SPECS, gate_arity, gate_matrix, is_unitary
from .parser import ParseResult, parse_qasm
from .printer import emit_qasm
from .types import (
    Barrier,
    CircuitIR,
    ClbitRef,
    Conditional,
    Diagnostic,
    Gate,
    Instruction,
    Measure,
    QubitRef,
    Reset,
    sort_diagnostics,
)
from .validate import validate

__all__ = [
    "Barrier",
    "CircuitIR",
    "ClbitRef",
    "Conditional",
    "CONTROLLED_GATES",
    "Diagnostic",
    "Gate",
    "GATE_SPECS",
    "Instruction",
    "Measure",
    "ParseResult",
    "QubitRef",
    "Reset",
    "emit_qasm",
    "gate_arity",
    "gate_matrix",
    "is_unitary",
    "parse_qasm",
    "sort_diagnostics",
    "validate",
]
