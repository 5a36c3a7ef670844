"""Backend contract: descriptors, the registry, and pre-dispatch capability checks."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Protocol

from ..bloch import PrecisionMode
from ..errors import CapabilityMismatchError, DuplicateBackendError, UnknownBackendError
from ..ir.types import CircuitIR, Conditional, Gate, Measure, Reset
from .jobs import JobConfig, JobResult

KIND_VIRTUAL = "virtual-statevector"
KIND_ORACLE = "reference-oracle"
KIND_STUB_NATIVE = "stub-native"


@dataclass(frozen=True)
class BackendDescriptor:
    """Published capabilities of one processing unit."""

    id: str
    kind: str
    max_qubits: int
    supports_aqic: bool
    supports_conditionals: bool
    precision_modes: frozenset[str] = frozenset({"full"})

    def __post_init__(self):
        if not self.id:
            raise ValueError("backend id must be non-empty")
        if self.max_qubits < 1:
            raise ValueError("max_qubits must be >= 1")

    def supports_precision(self, mode: PrecisionMode) -> bool:
        return ("fixed" if mode.is_fixed else "full") in self.precision_modes


class Executor(Protocol):
    """What a registered backend implementation must provide."""

    def run(self, ir: CircuitIR, config: JobConfig, job_id: str) -> JobResult: ...


class BackendRegistry:
    """Id-keyed backend table; safe for concurrent lookup after registration."""

    def __init__(self):
        self._entries: dict[str, tuple[BackendDescriptor, Executor]] = {}
        self._lock = threading.Lock()

    def register(self, descriptor: BackendDescriptor, executor: Executor) -> None:
        with self._lock:
            if descriptor.id in self._entries:
                raise DuplicateBackendError(f"backend {descriptor.id!r} already registered")
            self._entries[descriptor.id] = (descriptor, executor)

    def get(self, backend_id: str) -> tuple[BackendDescriptor, Executor]:
        try:
            return self._entries[backend_id]
        except KeyError:
            raise UnknownBackendError(f"no backend registered as {backend_id!r}") from None

    def list_backends(self) -> list[BackendDescriptor]:
        return [self._entries[k][0] for k in sorted(self._entries)]


def has_conditionals(ir: CircuitIR) -> bool:
    return any(isinstance(i, Conditional) for i in ir.instructions)


def measurement_terminal(ir: CircuitIR) -> bool:
    """True when the circuit is gates, then only measurements.

    Exact (direct-readout) execution needs this shape: no resets or
    conditionals anywhere, and no gate after the first measurement, so the
    final pre-measurement state is a single deterministic vector.
    """
    measured = False
    for instr in ir.instructions:
        if isinstance(instr, (Reset, Conditional)):
            return False
        if isinstance(instr, Measure):
            measured = True
        elif isinstance(instr, Gate) and measured:
            return False
    return True


def ensure_capabilities(
    descriptor: BackendDescriptor, ir: CircuitIR, config: JobConfig
) -> None:
    """Reject a job before dispatch if the backend cannot satisfy it."""
    if ir.num_qubits < 1:
        raise CapabilityMismatchError("circuit declares no qubits")
    if config.mode != "aqic" and ir.num_clbits < 1:
        raise CapabilityMismatchError(
            "shot sampling requires at least one classical bit to record into"
        )
    if ir.num_qubits > descriptor.max_qubits:
        raise CapabilityMismatchError(
            f"circuit needs {ir.num_qubits} qubits, backend {descriptor.id!r} "
            f"supports {descriptor.max_qubits}"
        )
    if not descriptor.supports_precision(config.precision):
        raise CapabilityMismatchError(
            f"backend {descriptor.id!r} does not support precision {config.precision}"
        )
    if has_conditionals(ir) and not descriptor.supports_conditionals:
        raise CapabilityMismatchError(
            f"backend {descriptor.id!r} does not support classical conditionals"
        )
    needs_exact = config.mode in ("aqic", "dual")
    if needs_exact and not descriptor.supports_aqic:
        raise CapabilityMismatchError(
            f"backend {descriptor.id!r} does not support direct state readout"
        )
    if (needs_exact or descriptor.kind == KIND_ORACLE) and not measurement_terminal(ir):
        raise CapabilityMismatchError(
            "exact readout requires a measurement-terminal circuit "
            "(gates first, then only measurements; no reset/conditional)"
        )
    if config.initial_angles is not None and len(config.initial_angles) != ir.num_qubits:
        raise CapabilityMismatchError(
            f"got {len(config.initial_angles)} initial angle pairs for "
            f"{ir.num_qubits} qubits"
        )
