"""Circuit intermediate representation.

Instructions are flat: whole-register gate and measure statements are
expanded at parse time, so every operand is a concrete (register, index)
reference. All nodes are frozen dataclasses; source positions travel on the
instructions but are excluded from equality so a printed-and-reparsed
circuit compares equal to the original.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True)
class QubitRef:
    register: str
    index: int

    def __str__(self) -> str:
        return f"{self.register}[{self.index}]"


@dataclass(frozen=True)
class ClbitRef:
    register: str
    index: int

    def __str__(self) -> str:
        return f"{self.register}[{self.index}]"


@dataclass(frozen=True)
class Gate:
    """A named unitary applied to ``controls + targets``."""

    name: str
    params: tuple[float, ...] = ()
    targets: tuple[QubitRef, ...] = ()
    controls: tuple[QubitRef, ...] = ()
    pos: tuple[int, int] | None = field(default=None, compare=False)

    @property
    def qubits(self) -> tuple[QubitRef, ...]:
        """All operands in matrix order: controls first, then targets."""
        return self.controls + self.targets


@dataclass(frozen=True)
class Measure:
    qubit: QubitRef
    clbit: ClbitRef
    pos: tuple[int, int] | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Reset:
    qubit: QubitRef
    pos: tuple[int, int] | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Conditional:
    """Execute the wrapped gate iff the classical register equals ``value``.

    The register value is read little-endian: bit [0] is least significant.
    """

    register: str
    value: int
    gate: Gate
    pos: tuple[int, int] | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Barrier:
    """Scheduling marker; preserved in the IR, a no-op in execution."""

    qubits: tuple[QubitRef, ...]
    pos: tuple[int, int] | None = field(default=None, compare=False)


Instruction = Union[Gate, Measure, Reset, Conditional, Barrier]


@dataclass(frozen=True)
class CircuitIR:
    """Validated instruction list over declared quantum/classical registers."""

    quantum_registers: tuple[tuple[str, int], ...] = ()
    classical_registers: tuple[tuple[str, int], ...] = ()
    instructions: tuple[Instruction, ...] = ()

    @property
    def num_qubits(self) -> int:
        return sum(size for _, size in self.quantum_registers)

    @property
    def num_clbits(self) -> int:
        return sum(size for _, size in self.classical_registers)

    def qubit_offsets(self) -> dict[str, int]:
        """Flat starting index of each quantum register, in declaration order."""
        offsets, total = {}, 0
        for name, size in self.quantum_registers:
            offsets[name] = total
            total += size
        return offsets

    def clbit_offsets(self) -> dict[str, int]:
        offsets, total = {}, 0
        for name, size in self.classical_registers:
            offsets[name] = total
            total += size
        return offsets


@dataclass(frozen=True)
class Diagnostic:
    """A parse or validation finding with a stable code and a source position.

    Positions are 1-based; (0, 0) marks diagnostics for circuits built
    programmatically, where no source text exists.
    """

    severity: str  # "error" | "warning"
    code: str
    message: str
    line: int = 0
    column: int = 0

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "severity": self.severity,
            "line": self.line,
            "column": self.column,
            "message": self.message,
        }

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message} [{self.code}]"


def sort_diagnostics(diagnostics) -> list[Diagnostic]:
    """Deterministic presentation order: by line, then column, then code."""
    return sorted(diagnostics, key=lambda d: (d.line, d.column, d.code, d.message))
