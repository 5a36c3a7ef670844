"""Exception hierarchy shared across the package."""


class VqpuError(Exception):
    """Base class for every error raised by this package."""


class ZeroNormError(VqpuError):
    """State norm below the corruption threshold; nothing left to normalize."""


class QuantizationCollapseError(VqpuError):
    """Every amplitude component rounded to zero: bit width too small for the state."""


class NonPositiveInputError(VqpuError):
    """A physical quantity that must be strictly positive was not."""


class UnknownGateError(VqpuError):
    """Gate name not in the supported set."""


class ArityMismatchError(VqpuError):
    """Wrong number of parameters or operands for a gate."""


class CapacityExceededError(VqpuError):
    """Requested qubit count exceeds the engine maximum."""


class InvalidAnglesError(VqpuError):
    """Initialization angle list does not match the qubit count."""


class InvalidOperandError(VqpuError):
    """Gate or measurement operand out of range for the register file."""


class UnsupportedInstructionError(VqpuError):
    """Instruction kind not supported by the requested operation."""


class DuplicateBackendError(VqpuError):
    """A backend with this id is already registered."""


class UnknownBackendError(VqpuError):
    """No backend registered under this id."""


class CapabilityMismatchError(VqpuError):
    """Job configuration asks for something the selected backend cannot do."""


class ValidationFailedError(VqpuError):
    """Circuit failed validation; carries the diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0].message if self.diagnostics else "invalid circuit"
        super().__init__(f"{first} ({len(self.diagnostics)} diagnostic(s))")
