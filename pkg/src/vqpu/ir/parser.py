"""OPENQASM 2.0 subset parser.

Total over arbitrary input text: every outcome is a CircuitIR or a list of
diagnostics, never an exception. Statement-level recovery (skip to the next
``;``) lets one pass report multiple errors.

Supported surface: the ``OPENQASM 2.0`` header, ``include "qelib1.inc";``,
``qreg``/``creg`` declarations, the standard gate set (``gates.GATE_SPECS``),
``measure``, ``reset``, ``barrier`` and ``if (creg==N) gate ...;``.
Whole-register gate and measure statements expand to per-index instructions
at parse time. Gate parameters accept numeric literals, ``pi``, ``+ - * / ^``,
unary minus, parentheses, and sin/cos/tan/exp/ln/sqrt.

Diagnostic codes emitted here: missing-header, syntax-error,
duplicate-register, register-size, undeclared-register, operand-kind,
index-out-of-range, unknown-gate, arity-mismatch, broadcast-mismatch,
duplicate-operand, invalid-parameter, unsupported-construct, and the warning
conditional-value. The validator adds capacity-exceeded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gates import CONTROLLED_GATES, GATE_SPECS
from .types import (
    Barrier,
    CircuitIR,
    ClbitRef,
    Conditional,
    Diagnostic,
    Gate,
    Measure,
    QubitRef,
    Reset,
)

_MAX_DIAGNOSTICS = 500
_MAX_EXPR_DEPTH = 64
_MAX_REGISTER_SIZE = 4096  # bounds broadcast expansion; engines cap far lower

_FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "ln": math.log,
    "sqrt": math.sqrt,
}


@dataclass(frozen=True)
class Token:
    kind: str  # id | int | real | string | sym | eof | badchar
    value: object
    line: int
    column: int


@dataclass
class ParseResult:
    """Outcome of a parse: an IR when no errors occurred, plus all diagnostics."""

    ir: CircuitIR | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.ir is not None


def parse_qasm(source: str) -> ParseResult:
    """Parse QASM text into a circuit IR, collecting diagnostics."""
    tokens, lex_diags = _lex(source)
    parser = _Parser(tokens, lex_diags)
    return parser.parse()


# --- lexer -----------------------------------------------------------------

_SYMBOL_STARTS = set(";,()[]{}+-*/^=<>!.")


def _ascii_digit(ch: str) -> bool:
    return "0" <= ch <= "9"


def _lex(source: str) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    line, col = 1, 1
    i, n = 0, len(source)

    def push(kind, value, ln, cl):
        tokens.append(Token(kind, value, ln, cl))

    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r\f\v":
            i += 1
            col += 1
            continue
        if ch == "/" and i + 1 < n and source[i + 1] == "/":
            while i < n and source[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            push("id", source[i:j], start_line, start_col)
            col += j - i
            i = j
            continue
        if _ascii_digit(ch) or (ch == "." and i + 1 < n and _ascii_digit(source[i + 1])):
            j = i
            is_real = False
            while j < n and _ascii_digit(source[j]):
                j += 1
            if j < n and source[j] == ".":
                is_real = True
                j += 1
                while j < n and _ascii_digit(source[j]):
                    j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and _ascii_digit(source[k]):
                    is_real = True
                    j = k
                    while j < n and _ascii_digit(source[j]):
                        j += 1
            text = source[i:j]
            if is_real:
                push("real", float(text), start_line, start_col)
            else:
                push("int", int(text), start_line, start_col)
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            while j < n and source[j] not in '"\n':
                j += 1
            if j < n and source[j] == '"':
                push("string", source[i + 1 : j], start_line, start_col)
                col += j + 1 - i
                i = j + 1
            else:
                diags.append(
                    Diagnostic("error", "syntax-error", "unterminated string",
                               start_line, start_col)
                )
                col += j - i
                i = j
            continue
        if ch in _SYMBOL_STARTS:
            two = source[i : i + 2]
            if two in ("->", "=="):
                push("sym", two, start_line, start_col)
                i += 2
                col += 2
            else:
                push("sym", ch, start_line, start_col)
                i += 1
                col += 1
            continue
        diags.append(
            Diagnostic("error", "syntax-error",
                       f"unexpected character {ch!r}", start_line, start_col)
        )
        push("badchar", ch, start_line, start_col)
        i += 1
        col += 1

    tokens.append(Token("eof", None, line, col))
    return tokens, diags


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[Token], diagnostics: list[Diagnostic]):
        self.tokens = tokens
        self.pos = 0
        self.diagnostics = diagnostics
        self.qregs: dict[str, int] = {}
        self.cregs: dict[str, int] = {}
        self.instructions: list = []
        self.had_header = False

    # token plumbing

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def match_sym(self, text: str) -> bool:
        if self.cur.kind == "sym" and self.cur.value == text:
            self.advance()
            return True
        return False

    def expect_sym(self, text: str) -> bool:
        if self.match_sym(text):
            return True
        self.error("syntax-error", f"expected {text!r}", self.cur)
        return False

    def error(self, code: str, message: str, tok: Token | None = None,
              severity: str = "error") -> None:
        tok = tok or self.cur
        if len(self.diagnostics) < _MAX_DIAGNOSTICS:
            self.diagnostics.append(
                Diagnostic(severity, code, message, tok.line, tok.column)
            )

    def sync(self) -> None:
        """Recover after an error: skip past the next ';' (or give up at EOF)."""
        while self.cur.kind != "eof":
            tok = self.advance()
            if tok.kind == "sym" and tok.value == ";":
                return

    # grammar

    def parse(self) -> ParseResult:
        self.parse_header()
        while self.cur.kind != "eof":
            if len(self.diagnostics) >= _MAX_DIAGNOSTICS:
                break
            self.parse_statement()
        errors = [d for d in self.diagnostics if d.severity == "error"]
        if errors:
            return ParseResult(None, self.diagnostics)
        ir = CircuitIR(
            quantum_registers=tuple(self.qregs.items()),
            classical_registers=tuple(self.cregs.items()),
            instructions=tuple(self.instructions),
        )
        return ParseResult(ir, self.diagnostics)

    def parse_header(self) -> None:
        if self.cur.kind == "eof":
            self.error("missing-header", "empty input: expected 'OPENQASM 2.0;'")
            return
        if not (self.cur.kind == "id" and self.cur.value == "OPENQASM"):
            self.error("missing-header", "expected 'OPENQASM 2.0;' before any statement")
            return
        self.advance()
        version = self.cur
        if version.kind in ("real", "int"):
            self.advance()
            if version.value != 2.0:
                self.error("unsupported-construct",
                           f"only OPENQASM 2.0 is supported, got {version.value}",
                           version)
        else:
            self.error("syntax-error", "expected version number after OPENQASM")
        if not self.expect_sym(";"):
            self.sync()
        self.had_header = True

    def parse_statement(self) -> None:
        tok = self.cur
        if tok.kind == "id":
            word = tok.value
            if word == "OPENQASM":
                self.error("syntax-error", "duplicate OPENQASM header", tok)
                self.advance()
                self.sync()
            elif word == "include":
                self.parse_include()
            elif word in ("qreg", "creg"):
                self.parse_register_decl()
            elif word == "gate":
                self.error("unsupported-construct",
                           "user-defined gate bodies are not supported", tok)
                self.skip_gate_definition()
            elif word == "opaque":
                self.error("unsupported-construct",
                           "opaque declarations are not supported", tok)
                self.advance()
                self.sync()
            elif word == "measure":
                self.parse_measure(tok)
            elif word == "reset":
                self.parse_reset(tok)
            elif word == "barrier":
                self.parse_barrier(tok)
            elif word == "if":
                self.parse_conditional(tok)
            else:
                self.parse_gate_statement(tok, conditional=None)
        else:
            self.error("syntax-error", f"unexpected token {tok.value!r}", tok)
            self.advance()
            self.sync()

    def parse_include(self) -> None:
        inc = self.advance()
        if self.cur.kind != "string":
            self.error("syntax-error", "expected a quoted filename after include")
            self.sync()
            return
        name = self.advance().value
        if name != "qelib1.inc":
            self.error("unsupported-construct",
                       f"include {name!r} is not supported (only qelib1.inc)", inc)
        if not self.expect_sym(";"):
            self.sync()

    def parse_register_decl(self) -> None:
        kind = self.advance().value  # qreg | creg
        name_tok = self.cur
        if name_tok.kind != "id":
            self.error("syntax-error", f"expected register name after {kind}")
            self.sync()
            return
        self.advance()
        size = None
        if self.expect_sym("["):
            if self.cur.kind == "int":
                size = self.advance().value
            else:
                self.error("syntax-error", "expected integer register size")
                self.sync()
                return
            if not self.expect_sym("]"):
                self.sync()
                return
        else:
            self.sync()
            return
        if not self.expect_sym(";"):
            self.sync()
            return
        name = name_tok.value
        if name in self.qregs or name in self.cregs:
            self.error("duplicate-register", f"register {name!r} already declared",
                       name_tok)
            return
        if size < 1:
            self.error("register-size", f"register {name!r} must have size >= 1",
                       name_tok)
            return
        if size > _MAX_REGISTER_SIZE:
            self.error("register-size",
                       f"register {name!r} exceeds the maximum supported size "
                       f"{_MAX_REGISTER_SIZE}", name_tok)
            return
        (self.qregs if kind == "qreg" else self.cregs)[name] = size

    def skip_gate_definition(self) -> None:
        # consume tokens to the matching '}' (or the first ';' when no body opens)
        self.advance()
        depth = 0
        while self.cur.kind != "eof":
            tok = self.advance()
            if tok.kind == "sym":
                if tok.value == "{":
                    depth += 1
                elif tok.value == "}":
                    depth -= 1
                    if depth <= 0:
                        return
                elif tok.value == ";" and depth == 0:
                    return

    # operands

    def parse_operand(self) -> tuple | None:
        """An argument: ``name`` or ``name[index]``. Returns (name, index|None, token)."""
        tok = self.cur
        if tok.kind != "id":
            self.error("syntax-error", "expected a register operand", tok)
            return None
        self.advance()
        index = None
        if self.match_sym("["):
            if self.cur.kind == "int":
                index = self.advance().value
            else:
                self.error("syntax-error", "expected integer index", self.cur)
                return None
            if not self.expect_sym("]"):
                return None
        return (tok.value, index, tok)

    def resolve_qubit(self, operand) -> tuple[str, int, int] | None:
        """(register, size, index|-1 for whole register), or None + diagnostic."""
        name, index, tok = operand
        if name in self.cregs:
            self.error("operand-kind", f"{name!r} is a classical register", tok)
            return None
        size = self.qregs.get(name)
        if size is None:
            self.error("undeclared-register", f"undeclared register {name!r}", tok)
            return None
        if index is not None and not 0 <= index < size:
            self.error("index-out-of-range",
                       f"index {index} out of range for {name}[{size}]", tok)
            return None
        return (name, size, -1 if index is None else index)

    def resolve_clbit(self, operand) -> tuple[str, int, int] | None:
        name, index, tok = operand
        if name in self.qregs:
            self.error("operand-kind", f"{name!r} is a quantum register", tok)
            return None
        size = self.cregs.get(name)
        if size is None:
            self.error("undeclared-register", f"undeclared register {name!r}", tok)
            return None
        if index is not None and not 0 <= index < size:
            self.error("index-out-of-range",
                       f"index {index} out of range for {name}[{size}]", tok)
            return None
        return (name, size, -1 if index is None else index)

    def broadcast_width(self, resolved: list, tok: Token) -> int | None:
        """Common expansion width: whole registers must agree in size."""
        widths = {size for _, size, idx in resolved if idx == -1}
        if not widths:
            return 1
        if len(widths) > 1:
            self.error("broadcast-mismatch",
                       "whole-register operands must have equal sizes", tok)
            return None
        return widths.pop()

    # statements

    def parse_measure(self, tok: Token) -> None:
        self.advance()
        src = self.parse_operand()
        if src is None or not self.expect_sym("->"):
            self.sync()
            return
        dst = self.parse_operand()
        if dst is None or not self.expect_sym(";"):
            self.sync()
            return
        q = self.resolve_qubit(src)
        c = self.resolve_clbit(dst)
        if q is None or c is None:
            return
        qname, qsize, qidx = q
        cname, csize, cidx = c
        if (qidx == -1) != (cidx == -1):
            self.error("broadcast-mismatch",
                       "measure needs register->register or bit->bit operands", tok)
            return
        if qidx == -1:
            if qsize != csize:
                self.error("broadcast-mismatch",
                           f"measure register sizes differ: {qsize} vs {csize}", tok)
                return
            for i in range(qsize):
                self.instructions.append(
                    Measure(QubitRef(qname, i), ClbitRef(cname, i),
                            pos=(tok.line, tok.column))
                )
        else:
            self.instructions.append(
                Measure(QubitRef(qname, qidx), ClbitRef(cname, cidx),
                        pos=(tok.line, tok.column))
            )

    def parse_reset(self, tok: Token) -> None:
        self.advance()
        operand = self.parse_operand()
        if operand is None or not self.expect_sym(";"):
            self.sync()
            return
        q = self.resolve_qubit(operand)
        if q is None:
            return
        name, size, idx = q
        indices = range(size) if idx == -1 else [idx]
        for i in indices:
            self.instructions.append(Reset(QubitRef(name, i), pos=(tok.line, tok.column)))

    def parse_barrier(self, tok: Token) -> None:
        self.advance()
        operands = [self.parse_operand()]
        while self.match_sym(","):
            operands.append(self.parse_operand())
        if any(op is None for op in operands) or not self.expect_sym(";"):
            self.sync()
            return
        refs: list[QubitRef] = []
        for op in operands:
            q = self.resolve_qubit(op)
            if q is None:
                return
            name, size, idx = q
            if idx == -1:
                refs.extend(QubitRef(name, i) for i in range(size))
            else:
                refs.append(QubitRef(name, idx))
        self.instructions.append(Barrier(tuple(refs), pos=(tok.line, tok.column)))

    def parse_conditional(self, tok: Token) -> None:
        self.advance()
        if not self.expect_sym("("):
            self.sync()
            return
        reg_tok = self.cur
        if reg_tok.kind != "id":
            self.error("syntax-error", "expected a classical register in if(...)")
            self.sync()
            return
        self.advance()
        if not self.expect_sym("=="):
            self.sync()
            return
        if self.cur.kind != "int":
            self.error("syntax-error", "expected an unsigned integer after ==")
            self.sync()
            return
        value = self.advance().value
        if not self.expect_sym(")"):
            self.sync()
            return
        inner = self.cur
        if inner.kind == "id" and inner.value in ("measure", "reset", "if", "barrier"):
            self.error("unsupported-construct",
                       f"conditional {inner.value} is not supported (gates only)", inner)
            self.sync()
            return
        c = self.resolve_clbit((reg_tok.value, None, reg_tok))
        if c is None:
            self.sync()
            return
        cname, csize, _ = c
        if value >= (1 << csize):
            self.error("conditional-value",
                       f"comparison value {value} can never match a {csize}-bit register",
                       reg_tok, severity="warning")
        self.parse_gate_statement(inner, conditional=(cname, value, tok))

    def parse_gate_statement(self, name_tok: Token, conditional) -> None:
        self.advance()
        name = name_tok.value
        spec = GATE_SPECS.get(name)
        if spec is None:
            self.error("unknown-gate", f"unknown gate {name!r}", name_tok)
            self.sync()
            return
        n_params, n_qubits = spec
        params: tuple[float, ...] = ()
        if self.cur.kind == "sym" and self.cur.value == "(":
            parsed = self.parse_params()
            if parsed is None:
                self.sync()
                return
            params = parsed
        if len(params) != n_params:
            self.error("arity-mismatch",
                       f"gate {name!r} takes {n_params} parameter(s), got {len(params)}",
                       name_tok)
            self.sync()
            return
        operands = [self.parse_operand()]
        while self.match_sym(","):
            operands.append(self.parse_operand())
        if any(op is None for op in operands) or not self.expect_sym(";"):
            self.sync()
            return
        if len(operands) != n_qubits:
            self.error("arity-mismatch",
                       f"gate {name!r} takes {n_qubits} operand(s), got {len(operands)}",
                       name_tok)
            return
        resolved = []
        for op in operands:
            q = self.resolve_qubit(op)
            if q is None:
                return
            resolved.append(q)
        width = self.broadcast_width(resolved, name_tok)
        if width is None:
            return
        pos = (name_tok.line, name_tok.column)
        for i in range(width):
            refs = tuple(
                QubitRef(reg, i if idx == -1 else idx) for reg, _, idx in resolved
            )
            if len(set(refs)) != len(refs):
                self.error("duplicate-operand",
                           f"gate {name!r} operands must be distinct qubits", name_tok)
                return
            if name in CONTROLLED_GATES:
                gate = Gate(name, params, targets=refs[1:], controls=refs[:1], pos=pos)
            else:
                gate = Gate(name, params, targets=refs, pos=pos)
            if conditional is not None:
                cname, value, if_tok = conditional
                self.instructions.append(
                    Conditional(cname, value, gate, pos=(if_tok.line, if_tok.column))
                )
            else:
                self.instructions.append(gate)

    # parameter expressions

    def parse_params(self) -> tuple[float, ...] | None:
        self.advance()  # '('
        values: list[float] = []
        if self.cur.kind == "sym" and self.cur.value == ")":
            self.advance()
            return ()
        while True:
            value = self.parse_expr(0)
            if value is None:
                return None
            if not math.isfinite(value):
                self.error("invalid-parameter", "parameter is not finite")
                return None
            values.append(value)
            if self.match_sym(","):
                continue
            if self.match_sym(")"):
                return tuple(values)
            self.error("syntax-error", "expected ',' or ')' in parameter list")
            return None

    def parse_expr(self, depth: int) -> float | None:
        if depth > _MAX_EXPR_DEPTH:
            self.error("syntax-error", "parameter expression too deeply nested")
            return None
        value = self.parse_term(depth)
        if value is None:
            return None
        while self.cur.kind == "sym" and self.cur.value in ("+", "-"):
            op = self.advance().value
            rhs = self.parse_term(depth)
            if rhs is None:
                return None
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self, depth: int) -> float | None:
        value = self.parse_factor(depth)
        if value is None:
            return None
        while self.cur.kind == "sym" and self.cur.value in ("*", "/"):
            op_tok = self.advance()
            rhs = self.parse_factor(depth)
            if rhs is None:
                return None
            if op_tok.value == "/":
                if rhs == 0.0:
                    self.error("invalid-parameter", "division by zero", op_tok)
                    return None
                value = value / rhs
            else:
                value = value * rhs
        return value

    def parse_factor(self, depth: int) -> float | None:
        if self.cur.kind == "sym" and self.cur.value in ("-", "+"):
            sign = self.advance().value
            value = self.parse_factor(depth + 1)
            if value is None:
                return None
            return -value if sign == "-" else value
        value = self.parse_primary(depth)
        if value is None:
            return None
        if self.cur.kind == "sym" and self.cur.value == "^":
            op_tok = self.advance()
            exponent = self.parse_factor(depth + 1)
            if exponent is None:
                return None
            try:
                result = float(value**exponent)
            except (OverflowError, ValueError, ZeroDivisionError):
                self.error("invalid-parameter", "invalid power expression", op_tok)
                return None
            return result
        return value

    def parse_primary(self, depth: int) -> float | None:
        tok = self.cur
        if tok.kind in ("int", "real"):
            self.advance()
            try:
                return float(tok.value)
            except OverflowError:
                self.error("invalid-parameter", "numeric literal too large", tok)
                return None
        if tok.kind == "id" and tok.value == "pi":
            self.advance()
            return math.pi
        if tok.kind == "id" and tok.value in _FUNCTIONS:
            self.advance()
            if not self.expect_sym("("):
                return None
            arg = self.parse_expr(depth + 1)
            if arg is None:
                return None
            if not self.expect_sym(")"):
                return None
            try:
                return float(_FUNCTIONS[tok.value](arg))
            except (ValueError, OverflowError):
                self.error("invalid-parameter",
                           f"domain error in {tok.value}({arg!r})", tok)
                return None
        if tok.kind == "sym" and tok.value == "(":
            self.advance()
            value = self.parse_expr(depth + 1)
            if value is None:
                return None
            if not self.expect_sym(")"):
                return None
            return value
        self.error("syntax-error", "expected a parameter expression", tok)
        return None
