"""Command-line front end: run, validate, resolve.

Exit codes: 0 success, 1 I/O error, 2 validation/capability/flag error,
3 internal failure. JSON output (the default) goes entirely to stdout and is
byte-stable for identical seeded invocations, except for the measured
``wall_time_ms`` field. In text mode diagnostics go to stderr.

Environment variables (precedence: flags > environment > defaults):

* ``VQPU_BACKEND``      default backend id when ``--backend`` is absent.
* ``VQPU_SYSTEM_ENTROPY`` any non-empty value makes unseeded runs draw from
  the OS entropy pool (the "sensor readout" mode) instead of generating and
  reporting a fresh master seed.
"""

from __future__ import annotations

import argparse
import os
import secrets
import sys
import time

from ._jsonout import render_document
from .bloch import BlochAngles, PrecisionMode
from .errors import (
    CapabilityMismatchError,
    NonPositiveInputError,
    UnknownBackendError,
    ValidationFailedError,
    VqpuError,
)
from .ir.parser import parse_qasm
from .ir.types import Diagnostic, sort_diagnostics
from .ir.validate import validate
from .resolution import DEFAULT_HUBBLE, ResolutionQuery, third_quantization
from .runtime.jobs import JobConfig
from .runtime.scheduler import Scheduler

ENV_BACKEND = "VQPU_BACKEND"
ENV_SYSTEM_ENTROPY = "VQPU_SYSTEM_ENTROPY"

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3


def _document(command, inputs, result, seed_used=None, backend_id=None, wall_time_ms=0.0):
    return {
        "schema_version": "1",
        "command": command,
        "inputs": inputs,
        "result": result,
        "seed_used": seed_used,
        "backend_id": backend_id,
        "wall_time_ms": wall_time_ms,
    }


def _diagnostics_result(diagnostics) -> dict:
    return {"diagnostics": [d.to_dict() for d in sort_diagnostics(diagnostics)]}


def _flag_error(message: str) -> Diagnostic:
    return Diagnostic("error", "invalid-flag", message)


def _sorted_histogram(histogram: dict[str, int]) -> dict[str, int]:
    """Descending count, ties broken lexicographically."""
    return dict(sorted(histogram.items(), key=lambda kv: (-kv[1], kv[0])))


def parse_init_angles(text: str) -> tuple[BlochAngles, ...]:
    """Parse ``"theta,phi;theta,phi;..."`` (radians) into Bloch angles."""
    angles = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'theta,phi', got {chunk!r}")
        angles.append(BlochAngles(float(parts[0]), float(parts[1])))
    if not angles:
        raise ValueError("no angle pairs given")
    return tuple(angles)


def resolve_backend_id(flag_value: str | None) -> str:
    return flag_value or os.environ.get(ENV_BACKEND) or "vqpu0"


def resolve_seed(flag_value: int | None) -> int | None:
    """Effective master seed: flag, else a fresh reported seed, else None.

    With ``VQPU_SYSTEM_ENTROPY`` set and no ``--seed``, returns None so the
    runtime draws from the OS pool (non-reproducible, seed_used is null).
    """
    if flag_value is not None:
        return flag_value
    if os.environ.get(ENV_SYSTEM_ENTROPY):
        return None
    return secrets.randbits(63)


def run_document(
    source: str,
    *,
    file_label: str = "<memory>",
    backend: str | None = None,
    shots: int = 1024,
    seed: int | None = None,
    precision: str = "full",
    mode: str = "sampled",
    init: str | None = None,
    registry=None,
) -> tuple[int, dict]:
    """Execute QASM text and build the run output document.

    Returns (exit_code, document); the CLI and the test suite share this
    path so the serialized document is the artifact under test.
    """
    inputs = {
        "file": file_label,
        "backend": None,
        "shots": shots,
        "seed": seed,
        "precision": precision,
        "mode": mode,
        "init": None,
    }

    def fail(diagnostics, code=EXIT_INVALID):
        return code, _document("run", inputs, _diagnostics_result(diagnostics))

    try:
        precision_mode = PrecisionMode.parse(precision)
    except ValueError as exc:
        return fail([_flag_error(str(exc))])
    angles = None
    if init is not None:
        try:
            angles = parse_init_angles(init)
        except ValueError as exc:
            return fail([_flag_error(f"bad --init: {exc}")])
        inputs["init"] = [[a.theta, a.phi] for a in angles]
    backend_id = resolve_backend_id(backend)
    inputs["backend"] = backend_id

    parsed = parse_qasm(source)
    if not parsed.ok:
        return fail(parsed.diagnostics)

    try:
        config = JobConfig(
            shots=shots,
            seed=resolve_seed(seed),
            precision=precision_mode,
            mode=mode,
            backend_id=backend_id,
            initial_angles=angles,
        )
    except ValueError as exc:
        return fail([_flag_error(str(exc))])

    scheduler = Scheduler(registry=registry, max_workers=2)
    try:
        result = scheduler.run(parsed.ir, config)
    except ValidationFailedError as exc:
        return fail(exc.diagnostics)
    except (CapabilityMismatchError, UnknownBackendError) as exc:
        return fail([Diagnostic("error", "capability", str(exc))])
    finally:
        scheduler.shutdown()

    payload = {
        "status": result.status,
        "histogram": _sorted_histogram(result.histogram)
        if result.histogram is not None
        else None,
        "exact_distribution": result.exact_distribution,
        "expectation_z": result.expectation_values,
        "divergence": result.divergence,
    }
    if result.status != "completed":
        payload["failure_reason"] = result.failure_reason
        doc = _document("run", inputs, payload, result.seed_used,
                        result.backend_id, result.wall_time_ms)
        return EXIT_INTERNAL, doc
    doc = _document("run", inputs, payload, result.seed_used,
                    result.backend_id, result.wall_time_ms)
    return EXIT_OK, doc


def _render_run_text(doc: dict, out) -> None:
    from ._jsonout import format_float

    result = doc["result"]
    print(f"command: {doc['command']}", file=out)
    print(f"backend: {doc['backend_id']}", file=out)
    print(f"seed_used: {doc['seed_used']}", file=out)
    print(f"wall_time_ms: {format_float(doc['wall_time_ms'])}", file=out)
    if result.get("status"):
        print(f"status: {result['status']}", file=out)
    if result.get("histogram") is not None:
        print("histogram:", file=out)
        for key, count in result["histogram"].items():
            print(f"  {key} {count}", file=out)
    if result.get("exact_distribution") is not None:
        print("exact_distribution:", file=out)
        for k, p in enumerate(result["exact_distribution"]):
            print(f"  {k} {format_float(float(p))}", file=out)
    if result.get("expectation_z") is not None:
        print("expectation_z:", file=out)
        for q, z in enumerate(result["expectation_z"]):
            print(f"  q{q} {format_float(float(z))}", file=out)
    if result.get("divergence") is not None:
        print(f"divergence: {format_float(result['divergence'])}", file=out)


def _emit(ns, exit_code: int, doc: dict) -> int:
    if ns.format == "json":
        sys.stdout.write(render_document(doc))
        return exit_code
    diagnostics = doc["result"].get("diagnostics")
    if diagnostics is not None:
        for d in diagnostics:
            print(
                f"{d['line']}:{d['column']}: {d['severity']}: {d['message']} [{d['code']}]",
                file=sys.stderr,
            )
    if doc["command"] == "run" and diagnostics is None:
        _render_run_text(doc, sys.stdout)
    elif doc["command"] == "resolve":
        from ._jsonout import format_float

        result = doc["result"]
        print(f"quanta_count: {format_float(result['quanta_count'])}")
        print(f"min_bits: {result['min_bits']}")
        print(f"delta_e_joules: {format_float(result['delta_e_joules'])}")
        if result["frequency_hz"] is not None:
            print(f"frequency_hz: {format_float(result['frequency_hz'])}")
        print(f"hubble_per_s: {format_float(result['hubble_per_s'])}")
    elif doc["command"] == "validate" and diagnostics is not None:
        print("valid" if exit_code == EXIT_OK else "invalid")
    return exit_code


def _read_source(path: str) -> str:
    with open(path, "r", encoding="utf-8", errors="replace") as handle:
        return handle.read()


def cmd_run(ns) -> int:
    try:
        source = _read_source(ns.file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    exit_code, doc = run_document(
        source,
        file_label=ns.file,
        backend=ns.backend,
        shots=ns.shots,
        seed=ns.seed,
        precision=ns.precision,
        mode=ns.mode,
        init=ns.init,
    )
    return _emit(ns, exit_code, doc)


def validate_document(source: str, file_label: str = "<memory>") -> tuple[int, dict]:
    start = time.perf_counter_ns()
    parsed = parse_qasm(source)
    diagnostics = list(parsed.diagnostics)
    if parsed.ok:
        diagnostics.extend(validate(parsed.ir))
    has_errors = any(d.severity == "error" for d in diagnostics)
    doc = _document(
        "validate",
        {"file": file_label},
        _diagnostics_result(diagnostics),
        wall_time_ms=(time.perf_counter_ns() - start) / 1e6,
    )
    return (EXIT_INVALID if has_errors else EXIT_OK), doc


def cmd_validate(ns) -> int:
    try:
        source = _read_source(ns.file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    exit_code, doc = validate_document(source, file_label=ns.file)
    return _emit(ns, exit_code, doc)


def resolve_document(
    frequency: float | None, delta_e: float | None, hubble: float
) -> tuple[int, dict]:
    inputs = {
        "frequency_hz": frequency,
        "delta_e_joules": delta_e,
        "hubble_per_s": hubble,
    }
    start = time.perf_counter_ns()
    try:
        report = third_quantization(
            ResolutionQuery(delta_e=delta_e, frequency=frequency, hubble=hubble)
        )
    except NonPositiveInputError as exc:
        doc = _document("resolve", inputs,
                        _diagnostics_result([_flag_error(str(exc))]))
        return EXIT_INVALID, doc
    doc = _document(
        "resolve",
        inputs,
        report.to_dict(),
        wall_time_ms=(time.perf_counter_ns() - start) / 1e6,
    )
    return EXIT_OK, doc


def cmd_resolve(ns) -> int:
    exit_code, doc = resolve_document(ns.frequency, ns.delta_e, ns.hubble)
    return _emit(ns, exit_code, doc)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vqpu",
        description="Run QASM circuits on virtual quantum backends.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a QASM file")
    run_p.add_argument("file")
    run_p.add_argument("--backend", default=None, help="backend id (default vqpu0)")
    run_p.add_argument("--shots", type=int, default=1024)
    run_p.add_argument("--seed", type=int, default=None)
    run_p.add_argument("--precision", default="full", help="full or fixed:B")
    run_p.add_argument("--mode", choices=["sampled", "aqic", "dual"], default="sampled")
    run_p.add_argument("--format", choices=["json", "text"], default="json")
    run_p.add_argument("--init", default=None,
                       help="per-qubit Bloch angles 'theta,phi;theta,phi;...' in radians")
    run_p.set_defaults(handler=cmd_run)

    val_p = sub.add_parser("validate", help="check a QASM file")
    val_p.add_argument("file")
    val_p.add_argument("--format", choices=["json", "text"], default="json")
    val_p.set_defaults(handler=cmd_validate)

    res_p = sub.add_parser("resolve", help="distinguishable-state calculator")
    gap = res_p.add_mutually_exclusive_group(required=True)
    gap.add_argument("--frequency", type=float, default=None, help="transition frequency, Hz")
    gap.add_argument("--delta-e", type=float, default=None, help="energy gap, joules")
    res_p.add_argument("--hubble", type=float, default=DEFAULT_HUBBLE)
    res_p.add_argument("--format", choices=["json", "text"], default="json")
    res_p.set_defaults(handler=cmd_resolve)

    return parser


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.handler(ns)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except VqpuError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # anything else is an internal failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
