"""Job scheduler: submit/await over a bounded worker pool.

Validation and capability checks happen synchronously at submission, so an
executor never sees a job it cannot run; executor exceptions surface as a
failed JobResult, never as a crash out of ``await_result``. Each job owns
its registers, and shot-level parallelism lives inside the engine, keeping
results independent of pool size.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import replace

from ..errors import ValidationFailedError
from ..ir.types import CircuitIR
from ..ir.validate import validate
from .backend import BackendRegistry, ensure_capabilities
from .backends import default_registry
from .jobs import (
    JobConfig,
    JobResult,
    histogram_frequencies,
    tv_distance,
    tv_distance_maps,
)


class Scheduler:
    def __init__(self, registry: BackendRegistry | None = None, max_workers: int = 4):
        self.registry = registry if registry is not None else default_registry()
        self._pool = ThreadPoolExecutor(max_workers=max_workers)
        self._jobs: dict[str, Future] = {}
        self._lock = threading.Lock()
        self._counter = 0

    def submit(self, ir: CircuitIR, config: JobConfig) -> str:
        """Queue a job after validation and capability checks; returns its id.

        Validation runs against the engine-wide qubit cap; tighter per-backend
        limits surface as CapabilityMismatchError instead.
        """
        descriptor, executor = self.registry.get(config.backend_id)
        errors = [d for d in validate(ir) if d.severity == "error"]
        if errors:
            raise ValidationFailedError(errors)
        ensure_capabilities(descriptor, ir, config)
        with self._lock:
            self._counter += 1
            job_id = f"job-{self._counter:06d}"
            future = self._pool.submit(self._run_safely, executor, ir, config, job_id)
            self._jobs[job_id] = future
        return job_id

    @staticmethod
    def _run_safely(executor, ir, config, job_id) -> JobResult:
        start = time.perf_counter_ns()
        try:
            return executor.run(ir, config, job_id)
        except Exception as exc:  # executor failures become failed results
            return JobResult(
                job_id=job_id,
                backend_id=config.backend_id,
                status="failed",
                failure_reason=f"{type(exc).__name__}: {exc}",
                seed_used=config.seed,
                wall_time_ms=(time.perf_counter_ns() - start) / 1e6,
            )

    def await_result(self, job_id: str, timeout: float | None = None) -> JobResult:
        """Block until the job finishes and return its result."""
        try:
            future = self._jobs[job_id]
        except KeyError:
            raise KeyError(f"unknown job id {job_id!r}") from None
        return future.result(timeout=timeout)

    def run(self, ir: CircuitIR, config: JobConfig) -> JobResult:
        """Submit and wait."""
        return self.await_result(self.submit(ir, config))

    def dual_execute(
        self,
        ir: CircuitIR,
        config: JobConfig,
        backend_a: str,
        backend_b: str,
        config_b: JobConfig | None = None,
    ) -> tuple[JobResult, JobResult, float | None]:
        """Run the same circuit on two backends concurrently and compare.

        Unless ``config_b`` overrides it, the second run reuses the first
        configuration (including the seed) with only the backend replaced.
        """
        config_a = replace(config, backend_id=backend_a)
        if config_b is None:
            config_b = replace(config, backend_id=backend_b)
        job_a = self.submit(ir, config_a)
        job_b = self.submit(ir, config_b)
        result_a = self.await_result(job_a)
        result_b = self.await_result(job_b)
        return result_a, result_b, divergence_between(result_a, result_b)

    def shutdown(self) -> None:
        self._pool.shutdown(wait=True)

    def __enter__(self) -> "Scheduler":
        return self

    def __exit__(self, *exc) -> None:
        self.shutdown()


def divergence_between(a: JobResult, b: JobResult) -> float | None:
    """Total variation distance between two results, using the best data available.

    Exact-vs-exact compares raw state distributions; otherwise classical
    projections and empirical frequencies are compared. None when either
    job failed or carries no distribution.
    """
    if not (a.completed and b.completed):
        return None
    if a.exact_distribution is not None and b.exact_distribution is not None:
        if a.exact_distribution.shape == b.exact_distribution.shape:
            return tv_distance(a.exact_distribution, b.exact_distribution)
    da = _classical_view(a)
    db = _classical_view(b)
    if da is None or db is None:
        return None
    return tv_distance_maps(da, db)


def _classical_view(result: JobResult) -> dict[str, float] | None:
    if result.exact_classical is not None:
        return result.exact_classical
    if result.histogram is not None:
        return histogram_frequencies(result.histogram)
    return None
