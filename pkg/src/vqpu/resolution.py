"""Distinguishable-state calculator for a two-level system.

Given the energy gap between a qubit's basis states (directly in joules, or
as a transition frequency), the number of distinguishable quanta is

    I = delta_E / (h * H)

with h the Planck constant and H the Hubble constant, and the minimum
classical bit width to index those states is ``ceil(log2(I))``. An RF qubit
with a 1 GHz gap lands near 2**89 states at the default H.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonPositiveInputError

#: Planck constant, J*s (exact SI value).
PLANCK_H = 6.62607015e-34

#: Default Hubble constant, 1/s (approx. 70 km/s/Mpc). Overridable per query.
DEFAULT_HUBBLE = 2.27e-18


@dataclass(frozen=True)
class ResolutionQuery:
    """Energy gap specified as exactly one of ``delta_e`` (J) or ``frequency`` (Hz)."""

    delta_e: float | None = None
    frequency: float | None = None
    hubble: float = DEFAULT_HUBBLE

    def __post_init__(self):
        if (self.delta_e is None) == (self.frequency is None):
            raise NonPositiveInputError(
                "specify exactly one of delta_e or frequency"
            )
        for name in ("delta_e", "frequency", "hubble"):
            value = getattr(self, name)
            if value is None:
                continue
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise NonPositiveInputError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class ResolutionReport:
    """Outputs of the calculator, with the inputs echoed back."""

    quanta_count: float
    min_bits: int
    delta_e: float
    frequency: float | None
    hubble: float

    def to_dict(self) -> dict:
        return {
            "quanta_count": self.quanta_count,
            "min_bits": self.min_bits,
            "delta_e_joules": self.delta_e,
            "frequency_hz": self.frequency,
            "hubble_per_s": self.hubble,
        }


def third_quantization(query: ResolutionQuery) -> ResolutionReport:
    """Compute the quanta count I and the minimum bit width for a qubit's gap.

    Raises NonPositiveInputError when the gap falls below the ground-state
    quantum h*H (the report invariant requires I >= 1).
    """
    delta_e = query.delta_e
    if delta_e is None:
        delta_e = PLANCK_H * query.frequency
    quanta = delta_e / (PLANCK_H * query.hubble)
    if quanta < 1.0:
        raise NonPositiveInputError(
            f"energy gap {delta_e!r} J is below the ground-state quantum h*H="
            f"{PLANCK_H * query.hubble!r} J"
        )
    min_bits = math.ceil(math.log2(quanta))
    return ResolutionReport(
        quanta_count=quanta,
        min_bits=min_bits,
        delta_e=delta_e,
        frequency=query.frequency,
        hubble=query.hubble,
    )
