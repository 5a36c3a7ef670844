"""Virtual QPU engine: Bloch registers, gate execution, measurement, sampling."""

from .breg import BlochRegister, QubitMeta, copy_breg, init_qubits, requantize
from .entropy import (
    EntropySource,
    EntropyStream,
    SeededCounter,
    SystemEntropy,
    counter_draw,
    splitmix64,
)
from .executor import (
    MeasurementRecord,
    RegisterLayout,
    apply_circuit,
    apply_gate,
    aqic_probabilities,
    classical_bitstring,
    expectation_z,
    lower_circuit,
    measure_qubit,
    sample_shots,
)
from .oracle import full_circuit_unitary

__all__ = [
    "BlochRegister",
    "EntropySource",
    "EntropyStream",
    "MeasurementRecord",
    "QubitMeta",
    "RegisterLayout",
    "SeededCounter",
    "SystemEntropy",
    "apply_circuit",
    "apply_gate",
    "aqic_probabilities",
    "classical_bitstring",
    "copy_breg",
    "counter_draw",
    "expectation_z",
    "full_circuit_unitary",
    "init_qubits",
    "lower_circuit",
    "measure_qubit",
    "requantize",
    "sample_shots",
    "splitmix64",
]
