"""A small arithmetic expression language with exact derivative jets.

Grammar (whitespace is insignificant)::

    expr    := term (("+"|"-") term)* ;
    term    := factor (("*"|"/") factor)* ;
    factor  := "-" factor | power ;
    power   := atom ("^" number)? ;
    atom    := number | ident | ident "(" expr ")" | "(" expr ")" ;

Expressions are evaluated in truncated Taylor arithmetic: ``eval_jet1``
returns derivatives up to third order in one variable and ``eval_jet2``
returns first and second partials in two variables. Derivatives are stored as
true derivatives, not Taylor coefficients.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

from .errors import ArityError, DomainError, ExprSyntaxError, UnknownIdentifier

FUNCTIONS = ("sinh", "cosh", "tanh", "sin", "cos", "exp", "ln", "sqrt", "abs")
CONSTANTS = {"pi": math.pi, "e": math.e}

# -- AST --------------------------------------------------------------------


@dataclass(frozen=True)
class Constant:
    value: float
    name: str | None = None


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" or one of FUNCTIONS
    child: "Node"


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


Node = Union[Constant, Variable, Unary, Binary]


@dataclass(frozen=True)
class ExprAst:
    """A parsed expression together with its declared variables."""

    root: Node
    variables: tuple[str, ...]
    source: str = ""

    def __str__(self):
        return to_string(self.root)


# -- tokenizer --------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


class _Token(NamedTuple):
    kind: str  # number | ident | op | eof
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    raw = text.encode("utf-8")
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            offset = len(text[:pos].encode("utf-8"))
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", offset)
        if m.lastgroup != "ws":
            offset = len(text[:pos].encode("utf-8"))
            tokens.append(_Token(m.lastgroup, m.group(), offset))
        pos = m.end()
    tokens.append(_Token("eof", "", len(raw)))
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = tuple(variables)

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, what):
        t = self.tok
        if t.kind == "eof":
            # point at the last real token: that is where the input broke off
            offset = self.tokens[self.i - 1].offset if self.i > 0 else 0
            raise ExprSyntaxError(f"unexpected end of input, expected {what}", offset)
        raise ExprSyntaxError(f"unexpected {t.text!r}, expected {what}", t.offset)

    def at_op(self, *ops):
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            if self.at_op(","):
                raise ArityError("unexpected ',' outside a function call", self.tok.offset)
            self.error("operator or end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            node = Binary(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            node = Binary(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self.at_op("-"):
            self.advance()
            return Unary("neg", self.factor())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            if self.tok.kind != "number":
                self.error("a numeric exponent")
            return Binary("^", base, Constant(float(self.advance().text)))
        return base

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "number":
            self.advance()
            return Constant(float(t.text))
        if t.kind == "ident":
            self.advance()
            if t.text in FUNCTIONS:
                if not self.at_op("("):
                    raise ArityError(f"function {t.text!r} needs one argument", t.offset)
                self.advance()
                if self.at_op(")"):
                    raise ArityError(f"function {t.text!r} needs one argument", t.offset)
                arg = self.expr()
                if self.at_op(","):
                    raise ArityError(f"function {t.text!r} takes exactly one argument", t.offset)
                if not self.at_op(")"):
                    self.error("')'")
                self.advance()
                return Unary(t.text, arg)
            if t.text in self.variables:
                node = Variable(t.text)
            elif t.text in CONSTANTS:
                node = Constant(CONSTANTS[t.text], t.text)
            else:
                raise UnknownIdentifier(f"unknown identifier {t.text!r}", t.offset)
            if self.at_op("("):
                raise ArityError(f"{t.text!r} is not a function", t.offset)
            return node
        if self.at_op("("):
            self.advance()
            node = self.expr()
            if not self.at_op(")"):
                self.error("')'")
            self.advance()
            return node
        self.error("a number, identifier or '('")


def parse(text: str, variables: Sequence[str]) -> ExprAst:
    """Parse ``text`` into an AST over the declared ``variables``."""
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    for v in variables:
        if v in FUNCTIONS:
            raise ValueError(f"variable name {v!r} collides with a function")
    return ExprAst(_Parser(text, variables).parse(), tuple(variables), text)


def _fmt_number(x: float) -> str:
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def to_string(node: Node) -> str:
    """Fully parenthesised source text that parses back to an equal tree."""
    if isinstance(node, Constant):
        if node.name:
            return node.name
        text = _fmt_number(abs(node.value))
        return f"(-{text})" if node.value < 0 else text
    if isinstance(node, Variable):
        return node.name
    if isinstance(node, Unary):
        if node.op == "neg":
            return f"(-{to_string(node.child)})"
        return f"{node.op}({to_string(node.child)})"
    if node.op == "^":
        p = node.right.value
        if p < 0:
            return f"(1 / ({to_string(node.left)})^{_fmt_number(-p)})"
        return f"({to_string(node.left)})^{_fmt_number(p)}"
    return f"({to_string(node.left)} {node.op} {to_string(node.right)})"


def dump(node: Node, indent: int = 0) -> str:
    """Indented tree listing, one node per line."""
    pad = "  " * indent
    if isinstance(node, Constant):
        label = f"Constant {node.name or _fmt_number(node.value)}"
        return pad + label
    if isinstance(node, Variable):
        return f"{pad}Variable {node.name}"
    if isinstance(node, Unary):
        return f"{pad}Unary {node.op}\n{dump(node.child, indent + 1)}"
    return f"{pad}Binary {node.op}\n{dump(node.left, indent + 1)}\n{dump(node.right, indent + 1)}"


# -- jets -------------------------------------------------------------------


class Jet1(NamedTuple):
    value: float
    d1: float = 0.0
    d2: float = 0.0
    d3: float = 0.0


class Jet2(NamedTuple):
    value: float
    du: float = 0.0
    dv: float = 0.0
    duu: float = 0.0
    duv: float = 0.0
    dvv: float = 0.0


def _elementary(op: str, x: float, order: int) -> tuple[float, float, float, float]:
    """Value and first three derivatives of a unary function at ``x``.

    Entries above ``order`` are not needed and may be zero.
    """
    if op == "sinh":
        s, c = math.sinh(x), math.cosh(x)
        return s, c, s, c
    if op == "cosh":
        s, c = math.sinh(x), math.cosh(x)
        return c, s, c, s
    if op == "tanh":
        t = math.tanh(x)
        w = 1.0 - t * t
        return t, w, -2.0 * t * w, w * (6.0 * t * t - 2.0)
    if op == "sin":
        s, c = math.sin(x), math.cos(x)
        return s, c, -s, -c
    if op == "cos":
        s, c = math.sin(x), math.cos(x)
        return c, -s, -c, s
    if op == "exp":
        v = math.exp(x)
        return v, v, v, v
    if op == "ln":
        if x <= 0:
            raise ValueError
        r = 1.0 / x
        return math.log(x), r, -r * r, 2.0 * r * r * r
    if op == "sqrt":
        if x < 0 or (x == 0 and order > 0):
            raise ValueError
        r = math.sqrt(x)
        if order == 0:
            return r, 0.0, 0.0, 0.0
        return r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x)
    if op == "abs":
        if x == 0 and order > 0:
            raise ValueError
        return abs(x), math.copysign(1.0, x), 0.0, 0.0
    if op == "recip":
        if x == 0:
            raise ValueError
        r = 1.0 / x
        return r, -r * r, 2.0 * r ** 3, -6.0 * r ** 4
    raise AssertionError(op)


def _power_derivs(x: float, p: float, order: int):
    is_int = p == int(p)
    if not is_int and x <= 0 and not (x == 0 and p >= order):
        raise ValueError
    if is_int and x == 0 and p < 0:
        raise ValueError
    out = []
    coef = 1.0
    for k in range(4):
        if coef == 0.0:
            out.append(0.0)
        else:
            out.append(coef * x ** (p - k) if k <= order else 0.0)
        coef *= p - k
    return tuple(out)


def _compose1(g, h: Jet1) -> Jet1:
    g0, g1, g2, g3 = g
    h1, h2, h3 = h.d1, h.d2, h.d3
    return Jet1(
        g0,
        g1 * h1,
        g2 * h1 * h1 + g1 * h2,
        g3 * h1 ** 3 + 3.0 * g2 * h1 * h2 + g1 * h3,
    )


def _compose2(g, h: Jet2) -> Jet2:
    g0, g1, g2, _ = g
    return Jet2(
        g0,
        g1 * h.du,
        g1 * h.dv,
        g2 * h.du * h.du + g1 * h.duu,
        g2 * h.du * h.dv + g1 * h.duv,
        g2 * h.dv * h.dv + g1 * h.dvv,
    )


def _mul1(a: Jet1, b: Jet1) -> Jet1:
    return Jet1(
        a.value * b.value,
        a.d1 * b.value + a.value * b.d1,
        a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2,
        a.d3 * b.value + 3.0 * (a.d2 * b.d1 + a.d1 * b.d2) + a.value * b.d3,
    )


def _mul2(a: Jet2, b: Jet2) -> Jet2:
    return Jet2(
        a.value * b.value,
        a.du * b.value + a.value * b.du,
        a.dv * b.value + a.value * b.dv,
        a.duu * b.value + 2.0 * a.du * b.du + a.value * b.duu,
        a.duv * b.value + a.du * b.dv + a.dv * b.du + a.value * b.duv,
        a.dvv * b.value + 2.0 * a.dv * b.dv + a.value * b.dvv,
    )


def _check(jet, node):
    if not all(math.isfinite(c) for c in jet):
        raise DomainError(f"non-finite result at node {to_string(node)}")
    return jet


class _JetEval:
    """Recursive evaluator parameterised over one jet flavour."""

    def __init__(self, cls, compose, mul, seeds, order):
        self.cls = cls
        self.compose = compose
        self.mul = mul
        self.seeds = seeds
        self.order = order

    def ev(self, node: Node):
        cls = self.cls
        if isinstance(node, Constant):
            return cls(node.value)
        if isinstance(node, Variable):
            return self.seeds[node.name]
        if isinstance(node, Unary):
            child = self.ev(node.child)
            if node.op == "neg":
                return cls(*(-c for c in child))
            try:
                g = _elementary(node.op, child.value, self.order)
            except (ValueError, OverflowError):
                raise DomainError(
                    f"{node.op}: argument {child.value!r} outside its domain "
                    f"in {to_string(node)}"
                ) from None
            return _check(self.compose(g, child), node)
        left = self.ev(node.left)
        if node.op == "^":
            p = node.right.value
            try:
                g = _power_derivs(left.value, p, self.order)
            except (ValueError, OverflowError, ZeroDivisionError):
                raise DomainError(
                    f"'^': base {left.value!r} outside the domain of x^{p!r} "
                    f"in {to_string(node)}"
                ) from None
            return _check(self.compose(g, left), node)
        right = self.ev(node.right)
        if node.op == "+":
            return cls(*(a + b for a, b in zip(left, right)))
        if node.op == "-":
            return cls(*(a - b for a, b in zip(left, right)))
        if node.op == "*":
            return _check(self.mul(left, right), node)
        try:
            r = _elementary("recip", right.value, self.order)
        except (ValueError, OverflowError):
            raise DomainError(f"'/': division by zero in {to_string(node)}") from None
        return _check(self.mul(left, self.compose(r, right)), node)


def _truncate1(j: Jet1, order: int) -> Jet1:
    return Jet1(*(c if k <= order else 0.0 for k, c in enumerate(j)))


def eval_jet1(ast: ExprAst, s: float, order: int = 3) -> Jet1:
    """Value and derivatives up to ``order`` (1..3) of a univariate expression."""
    if not 0 <= order <= 3:
        raise ValueError("order must lie in 0..3")
    if len(ast.variables) > 1:
        raise ValueError(f"expected a univariate expression, got variables {ast.variables}")
    seeds = {v: Jet1(float(s), 1.0) for v in ast.variables}
    jet = _JetEval(Jet1, _compose1, _mul1, seeds, order).ev(ast.root)
    return _truncate1(jet, order)


def eval_jet2(ast: ExprAst, u: float, v: float) -> Jet2:
    """Value with first and second partials of a bivariate expression."""
    if len(ast.variables) > 2:
        raise ValueError(f"expected at most two variables, got {ast.variables}")
    names = list(ast.variables) + ["_"] * (2 - len(ast.variables))
    seeds = {names[0]: Jet2(float(u), 1.0, 0.0), names[1]: Jet2(float(v), 0.0, 1.0)}
    return _JetEval(Jet2, _compose2, _mul2, seeds, 2).ev(ast.root)


def evaluate(ast: ExprAst, *point: float) -> float:
    """Plain value of the expression, no derivatives."""
    seeds = {name: Jet1(float(x)) for name, x in zip(ast.variables, point)}
    return _JetEval(Jet1, _compose1, _mul1, seeds, 0).ev(ast.root).value
