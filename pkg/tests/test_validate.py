"""Semantic validation of programmatically built IRs."""

from vqpu.ir.parser import parse_qasm
from vqpu.ir.types import (
    CircuitIR,
    ClbitRef,
    Conditional,
    Gate,
    Measure,
    QubitRef,
)
from vqpu.ir.validate import validate

from conftest import BELL_SOURCE


def error_codes(diags):
    return [d.code for d in diags if d.severity == "error"]


def test_valid_bell_is_clean():
    ir = parse_qasm(BELL_SOURCE).ir
    assert validate(ir) == []


def test_measure_into_out_of_range_clbit():
    ir = CircuitIR(
        (("q", 1),),
        (("c", 2),),
        (Measure(QubitRef("q", 0), ClbitRef("c", 5)),),
    )
    assert error_codes(validate(ir)) == ["index-out-of-range"]


def test_capacity_overflow_reported():
    ir = CircuitIR((("q", 40),), (), ())
    assert error_codes(validate(ir, max_qubits=26)) == ["capacity-exceeded"]
    assert error_codes(validate(ir, max_qubits=64)) == []


def test_conditional_over_undeclared_register():
    ir = CircuitIR(
        (("q", 1),),
        (),
        (Conditional("c", 1, Gate("x", (), (QubitRef("q", 0),))),),
    )
    assert error_codes(validate(ir)) == ["undeclared-register"]


def test_conditional_unreachable_value_is_warning():
    ir = CircuitIR(
        (("q", 1),),
        (("c", 1),),
        (Conditional("c", 9, Gate("x", (), (QubitRef("q", 0),))),),
    )
    diags = validate(ir)
    assert error_codes(diags) == []
    assert [d.code for d in diags] == ["conditional-value"]


def test_unknown_gate_and_arity():
    ir = CircuitIR(
        (("q", 2),),
        (),
        (
            Gate("ccx", (), (QubitRef("q", 0),)),
            Gate("rz", (), (QubitRef("q", 0),)),
            Gate("cx", (), (QubitRef("q", 0), QubitRef("q", 1))),  # missing control split
        ),
    )
    codes = error_codes(validate(ir))
    assert "unknown-gate" in codes
    assert "arity-mismatch" in codes


def test_duplicate_operand():
    ir = CircuitIR(
        (("q", 2),),
        (),
        (Gate("cx", (), (QubitRef("q", 0),), (QubitRef("q", 0),)),),
    )
    assert "duplicate-operand" in error_codes(validate(ir))


def test_non_finite_parameter():
    ir = CircuitIR(
        (("q", 1),),
        (),
        (Gate("rz", (float("nan"),), (QubitRef("q", 0),)),),
    )
    assert "invalid-parameter" in error_codes(validate(ir))


def test_duplicate_register_names():
    ir = CircuitIR((("q", 1),), (("q", 1),), ())
    assert "duplicate-register" in error_codes(validate(ir))


def test_zero_size_register():
    ir = CircuitIR((("q", 0),), (), ())
    assert "register-size" in error_codes(validate(ir))


def test_gate_into_classical_register():
    ir = CircuitIR(
        (("q", 1),),
        (("c", 1),),
        (Gate("x", (), (QubitRef("c", 0),)),),
    )
    assert "operand-kind" in error_codes(validate(ir))
