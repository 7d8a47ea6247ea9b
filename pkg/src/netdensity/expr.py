"""A small expression language for nets and set predicates.

Grammar (loosest binding first)::

    expr    := 'if' expr 'then' expr 'else' expr | or
    or      := and ('||' and)*
    and     := cmp ('&&' cmp)*
    cmp     := sum (('=='|'!='|'<'|'<='|'>'|'>=') sum)*
    sum     := prod (('+'|'-') prod)*
    prod    := unary (('*'|'/'|'%') unary)*
    unary   := ('!'|'-') unary | atom
    atom    := NUMBER | IDENT | IDENT '(' args ')' | '(' expr ')'

Identifiers are the coordinates: ``n`` (arity 1) or ``x1`` ... ``xd``.
Integers stay exact under ``+ - * %`` and ``pow`` with a non-negative
exponent, so divisibility and equality tests never see rounding; ``/`` and
the transcendental functions produce floats.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Union

NUM, BOOL = "num", "bool"


class ExprError(Exception):
    """Base class for expression errors."""


class ExprSyntaxError(ExprError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line, self.col = line, col


class ExprTypeError(ExprError):
    pass


class UnknownIdentifier(ExprError):
    pass


class EvalError(ExprError):
    pass


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Union[int, float]


@dataclass(frozen=True)
class Var:
    index: int
    name: str


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Cond:
    test: "Expr"
    then: "Expr"
    other: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


Expr = Union[Num, Var, Unary, Binary, Cond, Call]

ARITH = {"+", "-", "*", "/", "%"}
COMPARE = {"==", "!=", "<", "<=", ">", ">="}
LOGIC = {"&&", "||"}


def _pow(a, b):
    if isinstance(a, int) and isinstance(b, int) and b >= 0:
        return a**b
    return float(a) ** float(b)


def _floor(a):
    return math.floor(a)


# name -> (arity or None for variadic >= 2, result type, implementation)
FUNCTIONS: dict[str, tuple[int | None, str, Callable]] = {
    "abs": (1, NUM, abs),
    "min": (None, NUM, min),
    "max": (None, NUM, max),
    "pow": (2, NUM, _pow),
    "sin": (1, NUM, math.sin),
    "cos": (1, NUM, math.cos),
    "exp": (1, NUM, math.exp),
    "log": (1, NUM, math.log),
    "sqrt": (1, NUM, math.sqrt),
    "floor": (1, NUM, _floor),
    "isqrt": (1, NUM, lambda a: math.isqrt(int(a))),
    "divides": (2, BOOL, lambda b, a: a % b == 0),
}


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>&&|\|\||==|!=|<=|>=|[-+*/%<>!(),])
    """,
    re.VERBOSE,
)

KEYWORDS = {"if", "then", "else"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        col = pos - line_start + 1
        if not m:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "ws":
            nl = text.count("\n")
            if nl:
                line += nl
                line_start = pos + text.rfind("\n") + 1
        else:
            if kind == "ident" and text in KEYWORDS:
                kind = "kw"
            out.append(Token(kind, text, line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, src: str, arity: int):
        self.toks = tokenize(src)
        self.i = 0
        self.arity = arity

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ExprSyntaxError(msg, tok.line, tok.col)

    def accept(self, *texts: str) -> Token | None:
        if self.tok.kind in ("op", "kw") and self.tok.text in texts:
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        return t

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        if self.accept("if"):
            test = self.expr()
            self.expect("then")
            a = self.expr()
            self.expect("else")
            b = self.expr()
            return Cond(test, a, b)
        return self.binary(0)

    _LEVELS = [("||",), ("&&",), tuple(COMPARE), ("+", "-"), ("*", "/", "%")]

    def binary(self, level: int) -> Expr:
        if level == len(self._LEVELS):
            return self.unary()
        left = self.binary(level + 1)
        while True:
            t = self.accept(*self._LEVELS[level])
            if t is None:
                return left
            left = Binary(t.text, left, self.binary(level + 1))

    def unary(self) -> Expr:
        t = self.accept("!", "-")
        if t:
            return Unary(t.text, self.unary())
        return self.atom()

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            if re.fullmatch(r"\d+", t.text):
                return Num(int(t.text))
            return Num(float(t.text))
        if t.kind == "ident":
            self.i += 1
            if self.accept("("):
                args = []
                if not self.accept(")"):
                    args.append(self.expr())
                    while self.accept(","):
                        args.append(self.expr())
                    self.expect(")")
                if t.text not in FUNCTIONS:
                    raise UnknownIdentifier(f"unknown function {t.text!r} at line {t.line}, column {t.col}")
                return Call(t.text, tuple(args))
            return Var(self.var_index(t), t.text)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        found = t.text or "end of input"
        self.error(f"unexpected {found!r}")

    def var_index(self, t: Token) -> int:
        name = t.text
        if name == "n" and self.arity == 1:
            return 0
        m = re.fullmatch(r"x([1-9]\d*)", name)
        if m and int(m.group(1)) <= self.arity:
            return int(m.group(1)) - 1
        raise UnknownIdentifier(f"unknown identifier {name!r} at line {t.line}, column {t.col} (arity {self.arity})")


def type_of(e: Expr) -> str:
    """Check types bottom-up and return ``"num"`` or ``"bool"``."""
    if isinstance(e, (Num, Var)):
        return NUM
    if isinstance(e, Unary):
        t = type_of(e.operand)
        want = BOOL if e.op == "!" else NUM
        if t != want:
            raise ExprTypeError(f"operand of {e.op!r} must be {want}, got {t}")
        return want
    if isinstance(e, Binary):
        lt, rt = type_of(e.left), type_of(e.right)
        want = BOOL if e.op in LOGIC else NUM
        if lt != want or rt != want:
            raise ExprTypeError(f"operands of {e.op!r} must be {want}, got {lt} and {rt}")
        return BOOL if e.op in LOGIC or e.op in COMPARE else NUM
    if isinstance(e, Cond):
        if type_of(e.test) != BOOL:
            raise ExprTypeError("condition of 'if' must be bool")
        a, b = type_of(e.then), type_of(e.other)
        if a != b:
            raise ExprTypeError(f"branches of 'if' have different types {a} and {b}")
        return a
    if isinstance(e, Call):
        arity, result, _ = FUNCTIONS[e.name]
        if (arity is None and len(e.args) < 2) or (arity is not None and len(e.args) != arity):
            raise ExprTypeError(f"{e.name} takes {arity or 'at least 2'} arguments, got {len(e.args)}")
        for a in e.args:
            if type_of(a) != NUM:
                raise ExprTypeError(f"arguments of {e.name} must be num")
        return result
    raise TypeError(f"not an expression node: {e!r}")


def parse_expr(src: str, arity: int, want: str | None = None) -> Expr:
    """Parse and type-check ``src``; ``want`` optionally fixes the result type."""
    e = _Parser(src, arity).parse()
    t = type_of(e)
    if want is not None and t != want:
        raise ExprTypeError(f"expected a {want} expression, got {t}")
    return e


# ---------------------------------------------------------------------------
# Pretty printing
# ---------------------------------------------------------------------------


def pretty(e: Expr) -> str:
    """Fully parenthesised source that parses back to the same tree."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        return f"({e.op}{pretty(e.operand)})"
    if isinstance(e, Binary):
        return f"({pretty(e.left)} {e.op} {pretty(e.right)})"
    if isinstance(e, Cond):
        return f"(if {pretty(e.test)} then {pretty(e.then)} else {pretty(e.other)})"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(pretty(a) for a in e.args)})"
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

_ARITH_OPS = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": lambda a, b: a / b,
    "%": lambda a, b: a % b,
}
_CMP_OPS = {
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def _check(v):
    if isinstance(v, float) and not math.isfinite(v):
        raise OverflowError("result outside double range")
    return v


def compile_expr(e: Expr) -> Callable:
    """Closure evaluating ``e`` on an element tuple (no error wrapping)."""
    if isinstance(e, Num):
        v = e.value
        return lambda x: v
    if isinstance(e, Var):
        i = e.index
        return lambda x: x[i]
    if isinstance(e, Unary):
        f = compile_expr(e.operand)
        if e.op == "!":
            return lambda x: not f(x)
        return lambda x: -f(x)
    if isinstance(e, Binary):
        l, r = compile_expr(e.left), compile_expr(e.right)
        if e.op == "&&":
            return lambda x: l(x) and r(x)
        if e.op == "||":
            return lambda x: l(x) or r(x)
        op = _CMP_OPS.get(e.op)
        if op is not None:
            return lambda x: op(l(x), r(x))
        op = _ARITH_OPS[e.op]
        return lambda x: _check(op(l(x), r(x)))
    if isinstance(e, Cond):
        t, a, b = compile_expr(e.test), compile_expr(e.then), compile_expr(e.other)
        return lambda x: a(x) if t(x) else b(x)
    if isinstance(e, Call):
        fn = FUNCTIONS[e.name][2]
        args = [compile_expr(a) for a in e.args]
        return lambda x: _check(fn(*(a(x) for a in args)))
    raise TypeError(f"not an expression node: {e!r}")


class CompiledExpr:
    """Callable wrapper that turns arithmetic failures into :class:`EvalError`."""

    def __init__(self, e: Expr, arity: int):
        self.expr = e
        self.arity = arity
        self.type = type_of(e)
        self._fn = compile_expr(e)

    def __call__(self, elem):
        if len(elem) != self.arity:
            raise EvalError(f"expression of arity {self.arity} applied to {tuple(elem)}")
        try:
            return self._fn(elem)
        except ZeroDivisionError:
            raise EvalError(f"division by zero at {tuple(elem)}") from None
        except (OverflowError, ValueError) as exc:
            raise EvalError(f"{exc} at {tuple(elem)}") from None


def eval_expr(e: Expr, elem) -> Union[int, float, bool]:
    """Evaluate ``e`` at the element ``elem`` (a tuple of coordinates)."""
    return CompiledExpr(e, len(elem))(tuple(elem))
