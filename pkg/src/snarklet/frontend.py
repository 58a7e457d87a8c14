"""Mini arithmetic language: a one-function, straight-line subset of Python.

parse_source turns text like

    def f(x):
        y = x**3
        return x + y + 5

into an AST; flatten lowers the AST to a list of binary gates over a wire
vector [one, <input>, out, intermediates...].  Every binary operation in
the source becomes exactly one gate; x**k expands to k-1 multiplication
gates by left-to-right repeated multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .algebra import DEFAULT_MODULUS, Scalar

RESERVED = ("one", "out")


class ParseError(ValueError):
    """Source rejection with position info."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int


Expr = Union[Var, Const, BinOp, Power]


@dataclass(frozen=True)
class Assign:
    target: str
    expr: Expr


@dataclass(frozen=True)
class Program:
    name: str
    param: str
    assignments: tuple[Assign, ...]
    returns: Expr


# ---------------------------------------------------------------------------
# Tokenizer / parser


@dataclass(frozen=True)
class _Tok:
    kind: str  # "name", "int", or the symbol itself
    text: str
    line: int
    col: int


_SYMBOLS = ("**", "+", "-", "*", "(", ")", ":", "=")


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    for ln, line in enumerate(text.splitlines(), start=1):
        i = 0
        while i < len(line):
            ch = line[i]
            if ch.isspace():
                i += 1
                continue
            if ch == "#":
                break
            col = i + 1
            for sym in _SYMBOLS:
                if line.startswith(sym, i):
                    toks.append(_Tok(sym, sym, ln, col))
                    i += len(sym)
                    break
            else:
                if ch.isdigit():
                    j = i
                    while j < len(line) and line[j].isdigit():
                        j += 1
                    toks.append(_Tok("int", line[i:j], ln, col))
                    i = j
                elif ch.isalpha() or ch == "_":
                    j = i
                    while j < len(line) and (line[j].isalnum() or line[j] == "_"):
                        j += 1
                    toks.append(_Tok("name", line[i:j], ln, col))
                    i = j
                elif ch == "/":
                    raise ParseError("division is not supported", ln, col)
                else:
                    raise ParseError(f"unexpected character {ch!r}", ln, col)
        toks.append(_Tok("newline", "", ln, len(line) + 1))
    toks.append(_Tok("eof", "", len(text.splitlines()) + 1, 1))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0
        self.defined: set[str] = set()

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def advance(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what or kind}, got {tok.text or tok.kind!r}", tok.line, tok.col)
        return self.advance()

    def skip_newlines(self):
        while self.peek().kind == "newline":
            self.advance()

    def parse(self) -> Program:
        self.skip_newlines()
        tok = self.expect("name", "'def'")
        if tok.text != "def":
            raise ParseError("expected 'def'", tok.line, tok.col)
        fname = self.expect("name", "function name").text
        self.expect("(")
        param_tok = self.expect("name", "parameter name")
        param = param_tok.text
        if param in RESERVED:
            raise ParseError(f"{param!r} is a reserved name", param_tok.line, param_tok.col)
        self.expect(")")
        self.expect(":")
        self.defined.add(param)

        assignments = []
        returns = None
        while True:
            self.skip_newlines()
            tok = self.peek()
            if tok.kind == "eof":
                break
            if tok.kind != "name":
                raise ParseError(f"expected a statement, got {tok.text!r}", tok.line, tok.col)
            if tok.text == "return":
                self.advance()
                returns = self.parse_expr()
                self.end_of_statement()
                self.skip_newlines()
                tail = self.peek()
                if tail.kind != "eof":
                    raise ParseError("nothing may follow the return statement", tail.line, tail.col)
                break
            assignments.append(self.parse_assignment())
        if returns is None:
            tok = self.peek()
            raise ParseError("missing return statement", tok.line, tok.col)
        return Program(fname, param, tuple(assignments), returns)

    def parse_assignment(self) -> Assign:
        tok = self.expect("name", "assignment target")
        target = tok.text
        if target in RESERVED:
            raise ParseError(f"{target!r} is a reserved name", tok.line, tok.col)
        if target in self.defined:
            raise ParseError(f"reassignment of {target!r}", tok.line, tok.col)
        self.expect("=")
        expr = self.parse_expr()
        self.end_of_statement()
        self.defined.add(target)
        return Assign(target, expr)

    def end_of_statement(self):
        tok = self.peek()
        if tok.kind == "newline":
            self.advance()
        elif tok.kind != "eof":
            raise ParseError(f"unexpected {tok.text!r} after expression", tok.line, tok.col)

    def parse_expr(self) -> Expr:
        node = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self) -> Expr:
        node = self.parse_factor()
        while self.peek().kind == "*":
            self.advance()
            node = BinOp("*", node, self.parse_factor())
        return node

    def parse_factor(self) -> Expr:
        node = self.parse_atom()
        if self.peek().kind == "**":
            tok = self.advance()
            exp_tok = self.peek()
            if exp_tok.kind != "int":
                raise ParseError("exponent must be an integer literal", exp_tok.line, exp_tok.col)
            self.advance()
            exponent = int(exp_tok.text)
            if exponent < 1:
                raise ParseError("exponent must be at least 1", exp_tok.line, exp_tok.col)
            node = Power(node, exponent)
        return node

    def parse_atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return Const(int(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text in self.defined:
                return Var(tok.text)
            raise ParseError(f"undefined variable {tok.text!r}", tok.line, tok.col)
        if tok.kind == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        raise ParseError(f"expected a value, got {tok.text or tok.kind!r}", tok.line, tok.col)


def parse_source(text: str) -> Program:
    return _Parser(_tokenize(text)).parse()


# ---------------------------------------------------------------------------
# Flattening


LinearCombination = dict[int, Scalar]


@dataclass(frozen=True)
class Gate:
    """One binary gate: left and right are linear combinations of wires.

    Mul gates constrain eval(left) * eval(right) = wire[out].  Add gates
    fold the whole sum into `left` and keep right = the constant-one wire,
    so forward evaluation is uniformly eval(left) * eval(right).
    """

    kind: str  # "mul" or "add"
    left: LinearCombination
    right: LinearCombination
    out: int


@dataclass
class FlatProgram:
    """Gate list plus wire map: wire 0 is `one`, then the input, then `out`,
    then intermediates in creation order.  Public wires are {one, out};
    the input stays private (it is the witness)."""

    wires: list[str]
    public: tuple[int, ...]
    gates: list[Gate]
    modulus: int | None = field(default=DEFAULT_MODULUS)

    INPUT_WIRE = 1
    OUT_WIRE = 2

    @property
    def num_wires(self) -> int:
        return len(self.wires)

    def to_json(self) -> dict:
        return {
            "wires": list(self.wires),
            "public": list(self.public),
            "modulus": None if self.modulus is None else str(self.modulus),
            "gates": [
                {
                    "kind": g.kind,
                    "left": {str(w): c.to_str() for w, c in sorted(g.left.items())},
                    "right": {str(w): c.to_str() for w, c in sorted(g.right.items())},
                    "out": g.out,
                }
                for g in self.gates
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FlatProgram":
        modulus = None if data["modulus"] is None else int(data["modulus"])
        gates = [
            Gate(
                g["kind"],
                {int(w): Scalar.from_str(c, modulus) for w, c in g["left"].items()},
                {int(w): Scalar.from_str(c, modulus) for w, c in g["right"].items()},
                g["out"],
            )
            for g in data["gates"]
        ]
        return cls(list(data["wires"]), tuple(data["public"]), gates, modulus)


def flatten(program: Program, modulus: int | None = DEFAULT_MODULUS) -> FlatProgram:
    """Lower an AST to gates.  Deterministic: same program, same wiring."""
    one = Scalar(1, modulus)
    wires = ["one", program.param, "out"]
    env: dict[str, int] = {program.param: FlatProgram.INPUT_WIRE}
    gates: list[Gate] = []
    taken = set(wires) | {a.target for a in program.assignments}
    counter = 0

    def fresh_name() -> str:
        nonlocal counter
        while True:
            counter += 1
            name = f"sym{counter}"
            if name not in taken:
                taken.add(name)
                return name

    def alloc(name: str) -> int:
        wires.append(name)
        return len(wires) - 1

    def lc_merge(a: LinearCombination, b: LinearCombination, negate_b: bool = False) -> LinearCombination:
        out = dict(a)
        for w, c in b.items():
            cur = out.get(w)
            nxt = (cur - c if negate_b else cur + c) if cur is not None else (-c if negate_b else c)
            if nxt.value:
                out[w] = nxt
            elif w in out:
                del out[w]
        return out

    def emit(expr: Expr, target_fn) -> LinearCombination:
        """Returns the expression's linear combination.  If the expression
        is an operation and target_fn is given, its final gate writes the
        wire target_fn() returns; otherwise fresh wires are used."""
        if isinstance(expr, Const):
            return {0: Scalar(expr.value, modulus)}
        if isinstance(expr, Var):
            return {env[expr.name]: one}
        if isinstance(expr, Power):
            if expr.exponent == 1:
                return emit(expr.base, target_fn)
            base_lc = emit(expr.base, None)
            cur = base_lc
            for step in range(expr.exponent - 1):
                last = step == expr.exponent - 2
                out = target_fn() if (last and target_fn) else alloc(fresh_name())
                gates.append(Gate("mul", cur, base_lc, out))
                cur = {out: one}
            return cur
        if isinstance(expr, BinOp):
            left_lc = emit(expr.left, None)
            right_lc = emit(expr.right, None)
            out = target_fn() if target_fn else alloc(fresh_name())
            if expr.op == "*":
                gates.append(Gate("mul", left_lc, right_lc, out))
            else:
                merged = lc_merge(left_lc, right_lc, negate_b=(expr.op == "-"))
                gates.append(Gate("add", merged, {0: one}, out))
            return {out: one}
        raise TypeError(f"unknown expression node {expr!r}")

    def emit_statement(expr: Expr, wire_name: str | None):
        # wire_name None means the pre-allocated `out` wire
        fired = False

        def target_fn():
            nonlocal fired
            fired = True
            return alloc(wire_name) if wire_name is not None else FlatProgram.OUT_WIRE

        lc = emit(expr, target_fn)
        if not fired:
            # bare variable or literal: copy through a Mul by the one wire
            gates.append(Gate("mul", lc, {0: one}, target_fn()))

    for a in program.assignments:
        emit_statement(a.expr, a.target)
        env[a.target] = wires.index(a.target)
    emit_statement(program.returns, None)

    return FlatProgram(wires, (0, FlatProgram.OUT_WIRE), gates, modulus)
