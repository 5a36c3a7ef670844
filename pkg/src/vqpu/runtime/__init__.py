"""Virtual processor instances: backend contract, registry, job scheduler."""

from .backend import (
    KIND_ORACLE,
    KIND_STUB_NATIVE,
    KIND_VIRTUAL,
    BackendDescriptor,
    BackendRegistry,
    ensure_capabilities,
    has_conditionals,
    measurement_terminal,
)
from .backends import (
    ReferenceOracleBackend,
    StatevectorBackend,
    StubNativeBackend,
    default_registry,
)
from .jobs import (
    JobConfig,
    JobResult,
    classical_projection,
    histogram_frequencies,
    tv_distance,
    tv_distance_maps,
    z_expectations,
)
from .scheduler import Scheduler, divergence_between

__all__ = [
    "BackendDescriptor",
    "BackendRegistry",
    "JobConfig",
    "JobResult",
    "KIND_ORACLE",
    "KIND_STUB_NATIVE",
    "KIND_VIRTUAL",
    "ReferenceOracleBackend",
    "Scheduler",
    "StatevectorBackend",
    "StubNativeBackend",
    "classical_projection",
    "default_registry",
    "divergence_between",
    "ensure_capabilities",
    "has_conditionals",
    "histogram_frequencies",
    "measurement_terminal",
    "tv_distance",
    "tv_distance_maps",
    "z_expectations",
]
