"""Shared fixtures and circuit builders."""

from __future__ import annotations

import math

import numpy as np
import pytest

from vqpu.ir.types import CircuitIR, Gate, QubitRef

BELL_SOURCE = """\
OPENQASM 2.0;
qreg q[2];
creg c[2];
h q[0];
cx q[0],q[1];
measure q -> c;
"""

CONDITIONAL_SOURCE = """\
OPENQASM 2.0;
qreg q[2];
creg c[2];
x q[0];
measure q[0] -> c[0];
if (c==1) x q[1];
measure q[1] -> c[1];
"""

_PLAIN_1Q = ("id", "x", "y", "z", "h", "s", "sdg", "t", "tdg")
_ROTATIONS = ("rx", "ry", "rz")
_TWO_QUBIT = ("cx", "cz", "swap")


def random_gate_circuit(rng: np.random.Generator, num_qubits: int, depth: int) -> CircuitIR:
    """A gate-only circuit over one register named q, uniformly random."""
    instructions: list[Gate] = []
    while len(instructions) < depth:
        kind = int(rng.integers(0, 4))
        if kind == 0:
            name = _PLAIN_1Q[rng.integers(len(_PLAIN_1Q))]
            q = int(rng.integers(num_qubits))
            instructions.append(Gate(name, (), (QubitRef("q", q),)))
        elif kind == 1:
            name = _ROTATIONS[rng.integers(len(_ROTATIONS))]
            q = int(rng.integers(num_qubits))
            angle = float(rng.uniform(-2 * math.pi, 2 * math.pi))
            instructions.append(Gate(name, (angle,), (QubitRef("q", q),)))
        elif kind == 2:
            q = int(rng.integers(num_qubits))
            params = tuple(float(v) for v in rng.uniform(-math.pi, math.pi, 3))
            instructions.append(Gate("u", params, (QubitRef("q", q),)))
        else:
            if num_qubits < 2:
                continue
            name = _TWO_QUBIT[rng.integers(len(_TWO_QUBIT))]
            a, b = (int(v) for v in rng.choice(num_qubits, size=2, replace=False))
            if name == "swap":
                instructions.append(Gate(name, (), (QubitRef("q", a), QubitRef("q", b))))
            else:
                instructions.append(
                    Gate(name, (), (QubitRef("q", b),), (QubitRef("q", a),))
                )
    return CircuitIR((("q", num_qubits),), (), tuple(instructions))


def random_state(rng: np.random.Generator, num_qubits: int) -> np.ndarray:
    s = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    return (s / np.linalg.norm(s)).astype(np.complex128)


@pytest.fixture
def bell_ir():
    from vqpu.ir.parser import parse_qasm

    result = parse_qasm(BELL_SOURCE)
    assert result.ok
    return result.ir
