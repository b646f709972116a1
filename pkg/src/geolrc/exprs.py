"""Rational expressions over a finite field in the variables x, y, z, w, u, v.

Expressions are small immutable trees.  Evaluation returns either a field
element or the :data:`POLE` marker when some subexpression divides by zero;
no simplification is ever attempted, so ``0/0`` is a pole too.

Syntax: ``+ - * / ^``, parentheses, integer constants, the field generator
``a`` (extension fields only) and implicit multiplication, so
``a^2x^2z + xyz`` parses as a sum of products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .gf import GF, FieldElement

__all__ = ["RatExpr", "POLE", "Pole", "ExprSyntaxError", "parse", "evaluate", "VARIABLES"]

VARIABLES = frozenset("xyzwuv")


class Pole:
    """Outcome of evaluating an expression at one of its poles."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "POLE"

    def __bool__(self):
        return False


POLE = Pole()


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


# -- tree nodes --------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


class FieldOps:
    """Arithmetic on integer codes with ``None`` standing for a pole."""

    def __init__(self, field: GF):
        self.f = field

    def const(self, c):
        return c

    def add(self, a, b):
        return self.f.add(a, b)

    def sub(self, a, b):
        return self.f.sub(a, b)

    def mul(self, a, b):
        return self.f.mul(a, b)

    def neg(self, a):
        return self.f.neg(a)

    def div(self, a, b):
        if b == 0:
            return None
        return self.f.div(a, b)

    def pow(self, a, e):
        if e < 0:
            if a == 0:
                return None
            return self.f.pow(self.f.inv(a), -e)
        return self.f.pow(a, e)


class RatExpr:
    """A rational expression tied to a field.

    Build one with :func:`parse`; combine with ``+ - * /`` and ``**``.
    """

    __slots__ = ("field", "node", "_compiled")

    def __init__(self, field: GF, node):
        self.field = field
        self.node = node
        self._compiled = None

    # -- construction helpers --------------------------------------------
    @classmethod
    def const(cls, field: GF, value) -> "RatExpr":
        if isinstance(value, FieldElement):
            value = value.value
        return cls(field, Const(int(value)))

    @classmethod
    def var(cls, field: GF, name: str) -> "RatExpr":
        if name not in VARIABLES:
            raise ValueError(f"unknown variable {name!r}")
        return cls(field, Var(name))

    def _wrap(self, other) -> "RatExpr":
        if isinstance(other, RatExpr):
            self.field.check_same(other.field)
            return other
        if isinstance(other, FieldElement):
            return RatExpr.const(self.field, other)
        if isinstance(other, int):
            return RatExpr.const(self.field, self.field.from_int(other))
        return NotImplemented

    def _bin(self, op, other, swap=False):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        left, right = (o.node, self.node) if swap else (self.node, o.node)
        return RatExpr(self.field, BinOp(op, left, right))

    def __add__(self, o):
        return self._bin("+", o)

    def __radd__(self, o):
        return self._bin("+", o, swap=True)

    def __sub__(self, o):
        return self._bin("-", o)

    def __rsub__(self, o):
        return self._bin("-", o, swap=True)

    def __mul__(self, o):
        return self._bin("*", o)

    def __rmul__(self, o):
        return self._bin("*", o, swap=True)

    def __truediv__(self, o):
        return self._bin("/", o)

    def __rtruediv__(self, o):
        return self._bin("/", o, swap=True)

    def __neg__(self):
        return RatExpr(self.field, Neg(self.node))

    def __pow__(self, e: int):
        return RatExpr(self.field, Pow(self.node, int(e)))

    # -- structure ---------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, RatExpr) and self.field == other.field and self.node == other.node

    def __hash__(self):
        return hash((self.field.key(), self.node))

    def variables(self) -> frozenset[str]:
        out = set()

        def walk(n):
            if isinstance(n, Var):
                out.add(n.name)
            elif isinstance(n, BinOp):
                walk(n.left)
                walk(n.right)
            elif isinstance(n, Neg):
                walk(n.arg)
            elif isinstance(n, Pow):
                walk(n.base)

        walk(self.node)
        return frozenset(out)

    def substitute(self, mapping: Mapping[str, "RatExpr"]) -> "RatExpr":
        """Replace variables by expressions (no simplification)."""

        def walk(n):
            if isinstance(n, Var) and n.name in mapping:
                return mapping[n.name].node
            if isinstance(n, BinOp):
                return BinOp(n.op, walk(n.left), walk(n.right))
            if isinstance(n, Neg):
                return Neg(walk(n.arg))
            if isinstance(n, Pow):
                return Pow(walk(n.base), n.exp)
            return n

        for e in mapping.values():
            self.field.check_same(e.field)
        return RatExpr(self.field, walk(self.node))

    # -- printing ----------------------------------------------------------
    def __str__(self):
        return _fmt(self.node, self.field, 0)

    def __repr__(self):
        return f"RatExpr({str(self)!r})"

    # -- evaluation ----------------------------------------------------------
    def evaluate_with(self, ops, bindings: Mapping[str, object]):
        """Evaluate over an arbitrary arithmetic (used for Laurent expansions)."""

        def walk(n):
            if isinstance(n, Const):
                return ops.const(n.value)
            if isinstance(n, Var):
                try:
                    return bindings[n.name]
                except KeyError:
                    raise KeyError(f"unbound variable {n.name!r}") from None
            if isinstance(n, Neg):
                a = walk(n.arg)
                return None if a is None else ops.neg(a)
            if isinstance(n, Pow):
                a = walk(n.base)
                return None if a is None else ops.pow(a, n.exp)
            a = walk(n.left)
            b = walk(n.right)
            if a is None or b is None:
                return None
            if n.op == "+":
                return ops.add(a, b)
            if n.op == "-":
                return ops.sub(a, b)
            if n.op == "*":
                return ops.mul(a, b)
            return ops.div(a, b)

        return walk(self.node)

    def compiled(self) -> Callable[[Mapping[str, int]], int | None]:
        """A closure evaluating on integer codes; returns ``None`` at a pole."""
        if self._compiled is None:
            self._compiled = _compile(self.node, self.field)
        return self._compiled

    def eval_code(self, bindings: Mapping[str, int]) -> int | None:
        return self.compiled()(bindings)

    def __call__(self, **bindings):
        return evaluate(self, bindings)


def _compile(node, f: GF):
    mul, add, sub, neg, inv, fpow = f.mul, f.add, f.sub, f.neg, f.inv, f.pow
    if isinstance(node, Const):
        c = node.value
        return lambda b: c
    if isinstance(node, Var):
        name = node.name

        def var(b):
            try:
                return b[name]
            except KeyError:
                raise KeyError(f"unbound variable {name!r}") from None

        return var
    if isinstance(node, Neg):
        g = _compile(node.arg, f)

        def _neg(b):
            a = g(b)
            return None if a is None else neg(a)

        return _neg
    if isinstance(node, Pow):
        g = _compile(node.base, f)
        e = node.exp

        def _pow(b):
            a = g(b)
            if a is None:
                return None
            if e < 0:
                if a == 0:
                    return None
                return fpow(inv(a), -e)
            return fpow(a, e)

        return _pow
    gl = _compile(node.left, f)
    gr = _compile(node.right, f)
    op = {"+": add, "-": sub, "*": mul}.get(node.op)
    if op is not None:

        def _bin(b):
            x = gl(b)
            if x is None:
                return None
            y = gr(b)
            if y is None:
                return None
            return op(x, y)

        return _bin

    def _div(b):
        x = gl(b)
        if x is None:
            return None
        y = gr(b)
        if y is None or y == 0:
            return None
        return mul(x, inv(y))

    return _div


def _fmt(n, field: GF, parent: int) -> str:
    if isinstance(n, Const):
        s = field.format(n.value)
        return f"({s})" if "+" in s or (parent >= 3 and s.startswith("-")) else s
    if isinstance(n, Var):
        return n.name
    if isinstance(n, Neg):
        s = "-" + _fmt(n.arg, field, 3)
        return f"({s})" if parent >= 1 else s
    if isinstance(n, Pow):
        return f"{_fmt(n.base, field, 4)}^{n.exp}" if n.exp >= 0 else f"{_fmt(n.base, field, 4)}^({n.exp})"
    prec = _PREC[n.op]
    left = _fmt(n.left, field, prec)
    right = _fmt(n.right, field, prec + 1)
    s = f"{left}{n.op}{right}"
    return f"({s})" if prec < parent else s


# -- parsing -------------------------------------------------------------------


def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("num", text[i:j], i))
            i = j
        elif c.isalpha():
            toks.append(("name", c, i))
            i += 1
        elif c in "+-*/^()":
            toks.append((c, c, i))
            i += 1
        else:
            raise ExprSyntaxError(f"unexpected character {c!r}", text, i)
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, field: GF):
        self.text = text
        self.field = field
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExprSyntaxError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while True:
            kind = self.peek()[0]
            if kind in ("*", "/"):
                self.take()
                node = BinOp(kind, node, self.unary())
            elif kind in ("num", "name", "("):
                node = BinOp("*", node, self.power())
            else:
                return node

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.unary())
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            paren = self.peek()[0] == "("
            if paren:
                self.take()
            sign = 1
            if self.peek()[0] == "-":
                self.take()
                sign = -1
            e = int(self.take("num")[1])
            if paren:
                self.take(")")
            return Pow(base, sign * e)
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return Const(self.field.from_int(int(tok[1])))
        if tok[0] == "name":
            self.take()
            name = tok[1]
            if name in VARIABLES:
                return Var(name)
            if name == "a" and self.field.m > 1:
                return Const(self.field.gen.value)
            raise ExprSyntaxError(f"unknown variable {name!r}", self.text, tok[2])
        if tok[0] == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ExprSyntaxError(f"unexpected {what}", self.text, tok[2])


def parse(text: str, field: GF) -> RatExpr:
    """Parse ``text`` into a :class:`RatExpr` over ``field``."""
    return RatExpr(field, _Parser(str(text), field).parse())


def evaluate(expr: RatExpr, bindings: Mapping[str, object]):
    """Evaluate at a binding of variables to field elements.

    Returns a :class:`~geolrc.gf.FieldElement`, or :data:`POLE`.
    """
    codes = {}
    for k, v in bindings.items():
        if isinstance(v, FieldElement):
            expr.field.check_same(v.field)
            codes[k] = v.value
        else:
            codes[k] = expr.field.from_int(int(v))
    out = expr.eval_code(codes)
    return POLE if out is None else FieldElement(expr.field, out)
