"""Single-qubit geometry and state-vector primitives.

States are plain ``numpy.complex128`` arrays of length ``2**n``; the helpers
here keep them on the unit sphere, convert between Bloch angles and
amplitudes, and round amplitudes down to a fixed-point grid.

Conventions fixed once for the whole package:

* the ``|0>`` amplitude of a canonical single-qubit state is real and >= 0
  (global phase stripped), which makes the angle extraction well defined;
* ``phi`` is stored modulo 2*pi, ``theta`` must lie in [0, pi];
* at the poles (``theta`` in {0, pi}) the azimuth is meaningless and is
  canonicalized to ``phi = 0``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import QuantizationCollapseError, ZeroNormError

#: Tolerance for the unit-norm invariant on stored states.
NORM_TOL = 1e-10

#: Norms below this signal a corrupted state rather than drift.
ZERO_NORM_THRESHOLD = 1e-30

_TWO_PI = 2.0 * math.pi
_ANGLE_GRACE = 1e-12  # float fuzz allowed past the closed [0, pi] interval
_POLE_TOL = 1e-12


@dataclass(frozen=True)
class BlochAngles:
    """Point on the Bloch sphere: colatitude ``theta``, azimuth ``phi`` (radians).

    The constructor normalizes ``phi`` into [0, 2*pi) and rejects ``theta``
    outside [0, pi] (a grace band of 1e-12 absorbs float fuzz).
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        phi = float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise ValueError("Bloch angles must be finite")
        if -_ANGLE_GRACE <= theta < 0.0:
            theta = 0.0
        elif math.pi < theta <= math.pi + _ANGLE_GRACE:
            theta = math.pi
        elif not 0.0 <= theta <= math.pi:
            raise ValueError(f"theta={theta!r} outside [0, pi]")
        phi = math.fmod(phi, _TWO_PI)
        if phi < 0.0:
            phi += _TWO_PI
        if phi >= _TWO_PI:  # fmod can land exactly on 2*pi after the wrap
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)


@dataclass(frozen=True)
class PrecisionMode:
    """Amplitude storage mode: full binary64, or fixed point with ``bits`` per component.

    ``Fixed(bits)`` stores each real/imaginary component as a signed multiple
    of ``2**-(bits-1)`` (two's-complement fraction), renormalizing after every
    rounding pass.
    """

    bits: int | None = None

    MIN_BITS = 4
    MAX_BITS = 32

    def __post_init__(self):
        if self.bits is not None:
            if not isinstance(self.bits, int):
                raise TypeError("bits must be an integer")
            if not self.MIN_BITS <= self.bits <= self.MAX_BITS:
                raise ValueError(
                    f"bits={self.bits} outside [{self.MIN_BITS}, {self.MAX_BITS}]"
                )

    @classmethod
    def full(cls) -> "PrecisionMode":
        return cls(None)

    @classmethod
    def fixed(cls, bits: int) -> "PrecisionMode":
        return cls(bits)

    @classmethod
    def parse(cls, text: str) -> "PrecisionMode":
        """Parse ``"full"`` or ``"fixed:B"`` (CLI flag syntax)."""
        if text == "full":
            return cls.full()
        if text.startswith("fixed:"):
            try:
                return cls.fixed(int(text[len("fixed:"):]))
            except ValueError as exc:
                raise ValueError(f"bad precision {text!r}: {exc}") from None
        raise ValueError(f"bad precision {text!r}: expected 'full' or 'fixed:B'")

    @property
    def is_fixed(self) -> bool:
        return self.bits is not None

    @property
    def step(self) -> float:
        """Grid spacing of representable component values."""
        if self.bits is None:
            raise ValueError("full precision has no quantization step")
        return 2.0 ** -(self.bits - 1)

    def __str__(self) -> str:
        return "full" if self.bits is None else f"fixed:{self.bits}"


def zero_state(num_qubits: int) -> np.ndarray:
    """All-qubits-|0> state vector."""
    state = np.zeros(1 << num_qubits, dtype=np.complex128)
    state[0] = 1.0
    return state


def angles_to_state(a: BlochAngles) -> np.ndarray:
    """Single-qubit state ``(cos(theta/2), e^{i phi} sin(theta/2))``."""
    half = 0.5 * a.theta
    return np.array(
        [math.cos(half), cmath.exp(1j * a.phi) * math.sin(half)],
        dtype=np.complex128,
    )


def state_to_angles(s: np.ndarray) -> BlochAngles:
    """Recover Bloch angles from a normalized single-qubit state.

    The global phase is stripped first, so the result is invariant under
    ``s -> e^{i c} s``. Within 1e-12 of a pole the azimuth collapses to 0.
    """
    s = np.asarray(s, dtype=np.complex128)
    if s.shape != (2,):
        raise ValueError(f"expected a single-qubit state of length 2, got shape {s.shape}")
    a0, a1 = complex(s[0]), complex(s[1])
    m0, m1 = abs(a0), abs(a1)
    theta = 2.0 * math.atan2(m1, m0)
    if m0 <= _POLE_TOL or m1 <= _POLE_TOL:
        return BlochAngles(theta, 0.0)
    phi = cmath.phase(a1) - cmath.phase(a0)
    return BlochAngles(theta, phi)


def p_zero(a: BlochAngles) -> float:
    """Probability of reading 0 from a qubit at these angles: (1 + cos theta)/2."""
    return 0.5 * (1.0 + math.cos(a.theta))


def norm(s: np.ndarray) -> float:
    """Euclidean norm of the amplitude vector."""
    return float(np.sqrt(np.sum(s.real * s.real + s.imag * s.imag)))


def normalize(s: np.ndarray) -> np.ndarray:
    """Scale to unit norm. Raises ZeroNormError for norms below 1e-30."""
    n = norm(s)
    if n < ZERO_NORM_THRESHOLD:
        raise ZeroNormError(f"state norm {n!r} below {ZERO_NORM_THRESHOLD}")
    return s / n


def quantize_state(s: np.ndarray, bits: int) -> np.ndarray:
    """Round every component to the nearest multiple of ``2**-(bits-1)``, then renormalize.

    Rounding is half-to-even. Raises QuantizationCollapseError when every
    component rounds to zero.
    """
    step = PrecisionMode.fixed(bits).step
    re = np.round(s.real / step) * step
    im = np.round(s.imag / step) * step
    q = re + 1j * im
    n = norm(q)
    if n < ZERO_NORM_THRESHOLD:
        raise QuantizationCollapseError(
            f"all components rounded to zero at bits={bits}"
        )
    return q / n


def check_state(s: np.ndarray, tol: float = NORM_TOL) -> None:
    """Assert the state-vector invariants: power-of-two length, finite, unit norm."""
    size = s.shape[0]
    if size == 0 or size & (size - 1):
        raise ValueError(f"state length {size} is not a power of two")
    if not np.all(np.isfinite(s.view(np.float64))):
        raise ValueError("state contains non-finite components")
    n = norm(s)
    if abs(n - 1.0) > tol:
        raise ValueError(f"state norm {n!r} deviates from 1 by more than {tol}")


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """Overlap probability |<a|b>|^2 between two states of equal length."""
    return float(abs(np.vdot(a, b)) ** 2)
