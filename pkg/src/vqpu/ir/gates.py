"""Standard gate set: arities and unitary matrix construction.

Two-qubit matrices are written in the basis ``|ab>`` with index ``2*a + b``,
where ``a`` is the first operand (the control, for controlled gates).
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import ArityMismatchError, UnknownGateError

#: name -> (parameter count, qubit count)
GATE_SPECS: dict[str, tuple[int, int]] = {
    "id": (0, 1),
    "x": (0, 1),
    "y": (0, 1),
    "z": (0, 1),
    "h": (0, 1),
    "s": (0, 1),
    "sdg": (0, 1),
    "t": (0, 1),
    "tdg": (0, 1),
    "rx": (1, 1),
    "ry": (1, 1),
    "rz": (1, 1),
    "u": (3, 1),
    "cx": (0, 2),
    "cz": (0, 2),
    "swap": (0, 2),
}

#: gates whose first operand is a control qubit
CONTROLLED_GATES = frozenset({"cx", "cz"})

_SQRT1_2 = 1.0 / math.sqrt(2.0)


def gate_arity(name: str) -> tuple[int, int]:
    """(parameter count, qubit count) for a supported gate name."""
    try:
        return GATE_SPECS[name]
    except KeyError:
        raise UnknownGateError(f"unknown gate {name!r}") from None


def gate_matrix(name: str, params: tuple[float, ...] = ()) -> np.ndarray:
    """The standard unitary for a gate, as a 2x2 or 4x4 complex128 matrix."""
    n_params, _ = gate_arity(name)
    if len(params) != n_params:
        raise ArityMismatchError(
            f"gate {name!r} takes {n_params} parameter(s), got {len(params)}"
        )
    if name == "id":
        m = [[1, 0], [0, 1]]
    elif name == "x":
        m = [[0, 1], [1, 0]]
    elif name == "y":
        m = [[0, -1j], [1j, 0]]
    elif name == "z":
        m = [[1, 0], [0, -1]]
    elif name == "h":
        m = [[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]]
    elif name == "s":
        m = [[1, 0], [0, 1j]]
    elif name == "sdg":
        m = [[1, 0], [0, -1j]]
    elif name == "t":
        m = [[1, 0], [0, cmath.exp(0.25j * math.pi)]]
    elif name == "tdg":
        m = [[1, 0], [0, cmath.exp(-0.25j * math.pi)]]
    elif name == "rx":
        c, s = math.cos(params[0] / 2), math.sin(params[0] / 2)
        m = [[c, -1j * s], [-1j * s, c]]
    elif name == "ry":
        c, s = math.cos(params[0] / 2), math.sin(params[0] / 2)
        m = [[c, -s], [s, c]]
    elif name == "rz":
        half = params[0] / 2
        m = [[cmath.exp(-1j * half), 0], [0, cmath.exp(1j * half)]]
    elif name == "u":
        theta, phi, lam = params
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        m = [
            [c, -cmath.exp(1j * lam) * s],
            [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c],
        ]
    elif name == "cx":
        m = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    elif name == "cz":
        m = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
    elif name == "swap":
        m = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    else:  # unreachable: gate_arity already screened the name
        raise UnknownGateError(f"unknown gate {name!r}")
    return np.array(m, dtype=np.complex128)


def is_unitary(m: np.ndarray, tol: float = 1e-9) -> bool:
    """Element-wise check of U^dagger U = I."""
    eye = np.eye(m.shape[0], dtype=np.complex128)
    return bool(np.max(np.abs(m.conj().T @ m - eye)) <= tol)
