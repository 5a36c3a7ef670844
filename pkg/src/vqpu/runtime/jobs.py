"""Job configuration, results, and distribution-distance helpers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..bloch import BlochAngles, PrecisionMode
from ..ir.types import CircuitIR, Measure

MODES = ("sampled", "aqic", "dual")


@dataclass(frozen=True)
class JobConfig:
    """What to run and how: shot count, seed, precision, execution mode."""

    shots: int = 1024
    seed: int | None = None
    precision: PrecisionMode = field(default_factory=PrecisionMode.full)
    mode: str = "sampled"
    backend_id: str = "vqpu0"
    initial_angles: tuple[BlochAngles, ...] | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode != "aqic" and self.shots < 1:
            raise ValueError(f"shots must be >= 1 when sampling, got {self.shots}")

    def cache_key(self) -> tuple:
        angles = None
        if self.initial_angles is not None:
            angles = tuple((a.theta, a.phi) for a in self.initial_angles)
        return (self.shots, self.seed, str(self.precision), self.mode, angles)


@dataclass(frozen=True)
class JobResult:
    """Everything a finished job reports; fields are None when the mode did not produce them."""

    job_id: str
    backend_id: str
    status: str  # "completed" | "failed"
    failure_reason: str | None = None
    histogram: dict[str, int] | None = None
    exact_distribution: np.ndarray | None = None
    exact_classical: dict[str, float] | None = None
    expectation_values: list[float] | None = None
    divergence: float | None = None
    seed_used: int | None = None
    wall_time_ms: float = 0.0

    @property
    def completed(self) -> bool:
        return self.status == "completed"


def tv_distance(p: np.ndarray, q: np.ndarray) -> float:
    """Total variation distance between two aligned distributions: 0.5 * sum |p - q|."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError(f"distribution shapes differ: {p.shape} vs {q.shape}")
    return float(0.5 * np.sum(np.abs(p - q)))


def tv_distance_maps(p: dict[str, float], q: dict[str, float]) -> float:
    """Total variation distance between keyed distributions (missing keys read 0)."""
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def histogram_frequencies(histogram: dict[str, int]) -> dict[str, float]:
    """Relative frequencies of a shot histogram."""
    total = sum(histogram.values())
    return {k: v / total for k, v in histogram.items()}


def classical_projection(ir: CircuitIR, probs: np.ndarray) -> dict[str, float]:
    """Project a basis-state distribution onto classical readout strings.

    Applies the circuit's measure map (last write to each classical bit
    wins); unmeasured classical bits read 0. Keys match the engine's
    histogram format: flat classical bit 0 rightmost.
    """
    n = ir.num_qubits
    m = ir.num_clbits
    qubit_offsets = ir.qubit_offsets()
    clbit_offsets = ir.clbit_offsets()
    clbit_source: dict[int, int] = {}
    for instr in ir.instructions:
        if isinstance(instr, Measure):
            q = qubit_offsets[instr.qubit.register] + instr.qubit.index
            c = clbit_offsets[instr.clbit.register] + instr.clbit.index
            clbit_source[c] = q
    support = np.flatnonzero(probs)
    keys = np.zeros(support.shape[0], dtype=np.int64)
    for c, q in clbit_source.items():
        keys |= ((support >> (n - 1 - q)) & 1) << c
    out: dict[str, float] = {}
    for key, p in zip(keys, probs[support]):
        label = format(int(key), f"0{m}b") if m else ""
        out[label] = out.get(label, 0.0) + float(p)
    return out


def z_expectations(probs: np.ndarray, num_qubits: int) -> list[float]:
    """Per-qubit <Z> = P(0) - P(1) from a basis-state distribution."""
    view = probs.reshape([2] * num_qubits)
    values = []
    for q in range(num_qubits):
        axes = tuple(a for a in range(num_qubits) if a != q)
        marginal = view.sum(axis=axes)
        values.append(float(marginal[0] - marginal[1]))
    return values
