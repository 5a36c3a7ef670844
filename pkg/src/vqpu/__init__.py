"""vqpu: a virtual quantum processor runtime.

An idealized, hardware-agnostic gate-based QPU realized in software:
Bloch registers holding classical bits next to the classical image of an
n-qubit state, a QASM-subset intermediate representation, a state-vector
engine with projective measurement and direct (exact) readout, pluggable
backends behind a job scheduler, and a distinguishable-state calculator.
"""

from . import _kernels
from .bloch import (
    BlochAngles,
    PrecisionMode,
    angles_to_state,
    fidelity,
    normalize,
    p_zero,
    quantize_state,
    state_to_angles,
    zero_state,
)
from .engine import (
    BlochRegister,
    SeededCounter,
    SystemEntropy,
    apply_circuit,
    apply_gate,
    aqic_probabilities,
    copy_breg,
    expectation_z,
    full_circuit_unitary,
    init_qubits,
    measure_qubit,
    sample_shots,
)
from .ir import CircuitIR, emit_qasm, gate_matrix, parse_qasm, validate
from .resolution import (
    DEFAULT_HUBBLE,
    PLANCK_H,
    ResolutionQuery,
    ResolutionReport,
    third_quantization,
)
from .runtime import (
    BackendDescriptor,
    BackendRegistry,
    JobConfig,
    JobResult,
    Scheduler,
    default_registry,
)

__version__ = "0.1.0"


def kernel_implementation() -> str:
    """Which state-vector kernels are active: 'cython' or 'python'."""
    return _kernels.implementation()


__all__ = [
    "BackendDescriptor",
    "BackendRegistry",
    "BlochAngles",
    "BlochRegister",
    "CircuitIR",
    "DEFAULT_HUBBLE",
    "JobConfig",
    "JobResult",
    "PLANCK_H",
    "PrecisionMode",
    "ResolutionQuery",
    "ResolutionReport",
    "Scheduler",
    "SeededCounter",
    "SystemEntropy",
    "angles_to_state",
    "apply_circuit",
    "apply_gate",
    "aqic_probabilities",
    "copy_breg",
    "default_registry",
    "emit_qasm",
    "expectation_z",
    "fidelity",
    "full_circuit_unitary",
    "gate_matrix",
    "init_qubits",
    "kernel_implementation",
    "measure_qubit",
    "normalize",
    "p_zero",
    "parse_qasm",
    "quantize_state",
    "sample_shots",
    "state_to_angles",
    "third_quantization",
    "validate",
    "zero_state",
    "__version__",
]
