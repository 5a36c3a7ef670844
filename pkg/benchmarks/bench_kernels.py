"""Benchmark the compiled state-vector kernels against the numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--qubits 20] [--repeats 5] [--depth 40]

Times each hot kernel on a 2**qubits state and a full random circuit through
the engine under both implementations, printing per-op timings and speedups.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from vqpu import _kernels
from vqpu._kernels import fallback

try:
    from vqpu._kernels import _statevec as compiled
except ImportError:
    compiled = None


def best_of(repeats, fn):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def random_state(rng, num_qubits):
    s = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    return (s / np.linalg.norm(s)).astype(np.complex128)


def kernel_cases(num_qubits, rng):
    u2 = (0.6 + 0.0j, 0.8j, 0.8j, 0.6 + 0.0j)
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    u4 = np.ascontiguousarray(q)
    mid = num_qubits // 2
    return [
        ("apply_1q", lambda impl, s: impl.apply_1q(s, mid, *u2)),
        ("apply_1q_ctrl", lambda impl, s: impl.apply_1q_ctrl(s, 0, mid, *u2)),
        ("apply_2q", lambda impl, s: impl.apply_2q(s, 1, mid, u4)),
        ("prob_zero", lambda impl, s: impl.prob_zero(s, mid)),
        ("quantize", lambda impl, s: impl.quantize(s, 2.0**-15)),
        ("sumsq", lambda impl, s: impl.sumsq(s)),
    ]


def bench_kernels(num_qubits, repeats):
    rng = np.random.default_rng(0)
    base = random_state(rng, num_qubits)
    impls = [("python", fallback)] + ([("cython", compiled)] if compiled else [])
    print(f"\nkernels on a {num_qubits}-qubit state ({base.nbytes >> 20} MiB):")
    header = f"{'op':<16}" + "".join(f"{name:>12}" for name, _ in impls)
    if compiled:
        header += f"{'speedup':>10}"
    print(header)
    for op_name, op in kernel_cases(num_qubits, rng):
        row = f"{op_name:<16}"
        timings = []
        for _, impl in impls:
            state = base.copy()
            timings.append(best_of(repeats, lambda: op(impl, state)))
            row += f"{timings[-1] * 1e3:>10.2f}ms"
        if compiled:
            row += f"{timings[0] / timings[1]:>9.1f}x"
        print(row)


def bench_circuit(num_qubits, depth, repeats):
    from vqpu.engine.breg import init_qubits
    from vqpu.engine.executor import RegisterLayout, apply_gate
    from vqpu.ir.types import CircuitIR, Gate, QubitRef

    rng = np.random.default_rng(1)
    instructions = []
    for _ in range(depth):
        q = int(rng.integers(num_qubits))
        kind = int(rng.integers(3))
        if kind == 0:
            instructions.append(Gate("h", (), (QubitRef("q", q),)))
        elif kind == 1:
            instructions.append(
                Gate("rz", (float(rng.uniform(0, math.pi)),), (QubitRef("q", q),))
            )
        else:
            other = int((q + 1) % num_qubits)
            instructions.append(
                Gate("cx", (), (QubitRef("q", other),), (QubitRef("q", q),))
            )
    ir = CircuitIR((("q", num_qubits),), (), tuple(instructions))
    layout = RegisterLayout(ir)

    def run():
        breg = init_qubits(num_qubits)
        for instr in ir.instructions:
            apply_gate(breg, instr, layout)

    impls = [("python", fallback)] + ([("cython", compiled)] if compiled else [])
    print(f"\nfull circuit, {num_qubits} qubits x depth {depth}:")
    previous = _kernels.active
    timings = []
    try:
        for name, impl in impls:
            _kernels.active = impl
            timings.append(best_of(repeats, run))
            print(f"{name:<10}{timings[-1] * 1e3:>10.1f}ms")
    finally:
        _kernels.active = previous
    if compiled:
        print(f"speedup   {timings[0] / timings[1]:>9.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--qubits", type=int, default=20)
    parser.add_argument("--depth", type=int, default=40)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    if compiled is None:
        print("compiled kernels not built; timing the numpy fallback only")
    bench_kernels(args.qubits, args.repeats)
    bench_circuit(args.qubits, args.depth, args.repeats)


if __name__ == "__main__":
    main()
