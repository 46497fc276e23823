"""
A tiny language of holomorphic functions of one complex variable ``z``.

Expressions are immutable trees.  They can be parsed from text, printed back
in a canonical form, differentiated symbolically, and evaluated to second
order jets ``(f(z), f'(z), f''(z))``.

Grammar (lowest to highest precedence)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := primary ('^' unary)?          # right associative
    primary := NUMBER | NUMBER 'i' | 'i' | 'z' | FUNC '(' expr ')' | '(' expr ')'
    FUNC    := exp | log | sin | cos | sinh | cosh

The exponent of ``^`` must fold to a non-negative integer constant.
Subtrees without ``z`` are folded into a single complex literal while parsing,
so ``(3-(1/3)*i)*z`` becomes ``Mul(Const(3-0.333...j), Var())``.

Example:

    >>> e = parse("z*exp(z)")
    >>> to_string(differentiate(e))
    'exp(z)+z*exp(z)'
    >>> eval_jet(parse("z^3"), 2)
    ComplexJet(v=(8+0j), d1=(12+0j), d2=(12+0j))
"""
from __future__ import annotations

import cmath
import functools
import re
from dataclasses import dataclass
from typing import Callable

__all__ = [
    "HoloExpr", "Var", "Const", "Add", "Sub", "Mul", "Div", "Pow", "Neg", "Func",
    "ComplexJet", "ParseError", "DomainError", "FUNCTIONS",
    "parse", "to_string", "differentiate", "derivatives", "evaluate",
    "eval_jet", "real_inner", "const", "var", "Z",
]


class ParseError(ValueError):
    """Raised for malformed expression text; carries the character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class DomainError(ArithmeticError):
    """Raised when evaluation hits a pole or the log branch cut."""

    def __init__(self, message: str, subexpression: "HoloExpr"):
        self.subexpression = subexpression
        super().__init__(f"{message} in '{to_string(subexpression)}'")


# ---------------------------------------------------------------------------
# Tree nodes
# ---------------------------------------------------------------------------

class HoloExpr:
    """Base class of expression nodes.  Supports ``+ - * / **`` and unary ``-``."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, _lift(other))

    def __radd__(self, other):
        return add(_lift(other), self)

    def __sub__(self, other):
        return sub(self, _lift(other))

    def __rsub__(self, other):
        return sub(_lift(other), self)

    def __mul__(self, other):
        return mul(self, _lift(other))

    def __rmul__(self, other):
        return mul(_lift(other), self)

    def __truediv__(self, other):
        return div(self, _lift(other))

    def __rtruediv__(self, other):
        return div(_lift(other), self)

    def __pow__(self, n: int):
        return power(self, n)

    def __neg__(self):
        return neg(self)

    def __str__(self):
        return to_string(self)

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)


@dataclass(frozen=True, repr=False)
class Var(HoloExpr):
    def __repr__(self):
        return "Var()"


@dataclass(frozen=True)
class Const(HoloExpr):
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class Add(HoloExpr):
    left: HoloExpr
    right: HoloExpr


@dataclass(frozen=True)
class Sub(HoloExpr):
    left: HoloExpr
    right: HoloExpr


@dataclass(frozen=True)
class Mul(HoloExpr):
    left: HoloExpr
    right: HoloExpr


@dataclass(frozen=True)
class Div(HoloExpr):
    left: HoloExpr
    right: HoloExpr


@dataclass(frozen=True)
class Pow(HoloExpr):
    base: HoloExpr
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError(f"exponent must be a non-negative int, got {self.exponent!r}")


@dataclass(frozen=True)
class Neg(HoloExpr):
    arg: HoloExpr


@dataclass(frozen=True)
class Func(HoloExpr):
    name: str
    arg: HoloExpr

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"unknown function {self.name!r}")


def _principal_log(w: complex) -> complex:
    if w.imag == 0 and w.real <= 0:
        raise ValueError("log branch cut")
    return cmath.log(w)


# name -> value function (principal branch for log)
FUNCTIONS: dict[str, Callable[[complex], complex]] = {
    "exp": cmath.exp,
    "log": _principal_log,
    "sin": cmath.sin,
    "cos": cmath.cos,
    "sinh": cmath.sinh,
    "cosh": cmath.cosh,
}

Z = Var()


def var() -> Var:
    return Z


def const(value: complex) -> Const:
    return Const(complex(value))


def _lift(x) -> HoloExpr:
    if isinstance(x, HoloExpr):
        return x
    if isinstance(x, (int, float, complex)):
        return Const(complex(x))
    raise TypeError(f"cannot combine expression with {type(x).__name__}")


# ---------------------------------------------------------------------------
# Smart constructors: fold literal subtrees and drop additive/multiplicative
# identities.  The parser only relies on the folding part.
# ---------------------------------------------------------------------------

def _is(e: HoloExpr, value: complex) -> bool:
    return isinstance(e, Const) and e.value == value


def add(a: HoloExpr, b: HoloExpr) -> HoloExpr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    return Add(a, b)


def sub(a: HoloExpr, b: HoloExpr) -> HoloExpr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _is(b, 0):
        return a
    if _is(a, 0):
        return neg(b)
    return Sub(a, b)


def mul(a: HoloExpr, b: HoloExpr) -> HoloExpr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _is(a, 0) or _is(b, 0):
        return Const(0)
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    return Mul(a, b)


def div(a: HoloExpr, b: HoloExpr) -> HoloExpr:
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0:
        return Const(a.value / b.value)
    if _is(b, 1):
        return a
    if _is(a, 0) and not _is(b, 0):
        return Const(0)
    return Div(a, b)


def power(a: HoloExpr, n: int) -> HoloExpr:
    if isinstance(a, Const):
        return Const(a.value ** n)
    if n == 0:
        return Const(1)
    if n == 1:
        return a
    return Pow(a, n)


def neg(a: HoloExpr) -> HoloExpr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def func(name: str, a: HoloExpr) -> HoloExpr:
    if isinstance(a, Const):
        try:
            return Const(FUNCTIONS[name](a.value))
        except (ValueError, OverflowError):
            pass
    return Func(name, a)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<name>[A-Za-z_]+)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, expected: str):
        kind, value, pos = self.tok
        found = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"expected {expected}, found {found}", pos, self.text)

    def accept(self, value: str) -> bool:
        if self.tok[0] == "op" and self.tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str):
        if not self.accept(value):
            self.fail(repr(value))

    def parse(self) -> HoloExpr:
        e = self.expr()
        if self.tok[0] != "end":
            self.fail("operator or end of input")
        return e

    def expr(self) -> HoloExpr:
        e = self.term()
        while True:
            if self.accept("+"):
                e = _fold(Add, e, self.term())
            elif self.accept("-"):
                e = _fold(Sub, e, self.term())
            else:
                return e

    def term(self) -> HoloExpr:
        e = self.unary()
        while True:
            if self.accept("*"):
                e = _fold(Mul, e, self.unary())
            elif self.accept("/"):
                pos = self.tok[2]
                rhs = self.unary()
                if isinstance(e, Const) and _is(rhs, 0):
                    raise ParseError("division by zero constant", pos, self.text)
                e = _fold(Div, e, rhs)
            else:
                return e

    def unary(self) -> HoloExpr:
        if self.accept("-"):
            a = self.unary()
            return Const(-a.value) if isinstance(a, Const) else Neg(a)
        return self.power()

    def power(self) -> HoloExpr:
        base = self.primary()
        if not self.accept("^"):
            return base
        pos = self.tok[2]
        exponent = self.unary()
        if not isinstance(exponent, Const):
            raise ParseError("exponent must be a constant integer", pos, self.text)
        v = exponent.value
        if v.imag != 0 or v.real != int(v.real):
            raise ParseError(f"non-integer exponent {v}", pos, self.text)
        if v.real < 0:
            raise ParseError(f"negative exponent {int(v.real)} (use a quotient)", pos, self.text)
        n = int(v.real)
        return Const(base.value ** n) if isinstance(base, Const) else Pow(base, n)

    def primary(self) -> HoloExpr:
        kind, value, pos = self.tok
        if kind == "num":
            self.i += 1
            if value.endswith("i"):
                return Const(complex(0, float(value[:-1])))
            return Const(float(value))
        if kind == "name":
            self.i += 1
            if value == "z":
                return Z
            if value == "i":
                return Const(1j)
            if value in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                if isinstance(arg, Const):
                    try:
                        return Const(FUNCTIONS[value](arg.value))
                    except (ValueError, OverflowError):
                        raise ParseError(f"{value} undefined at constant {arg.value}", pos, self.text)
                return Func(value, arg)
            raise ParseError(f"unknown name {value!r}", pos, self.text)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.fail("number, 'z', 'i', function or '('")


_FOLD_OPS = {
    Add: lambda a, b: a + b,
    Sub: lambda a, b: a - b,
    Mul: lambda a, b: a * b,
    Div: lambda a, b: a / b,
}


def _fold(cls, a: HoloExpr, b: HoloExpr) -> HoloExpr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(_FOLD_OPS[cls](a.value, b.value))
    return cls(a, b)


def parse(text: str) -> HoloExpr:
    """Parse *text* into an expression tree; raises :class:`ParseError`."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}
_OPS = {Add: "+", Sub: "-", Mul: "*", Div: "/"}
_ATOM = 5


def _fmt_real(x: float) -> str:
    # shortest repr round-trips exactly; integral values print without ".0"
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _format_const(v: complex) -> str:
    re_, im = v.real, v.imag
    if im == 0:
        s = _fmt_real(re_)
        return f"({s})" if re_ < 0 or s.startswith("-") else s
    if re_ == 0:
        if im == 1:
            return "i"
        return f"({_fmt_real(im)}*i)"
    sign = "-" if im < 0 else "+"
    return f"({_fmt_real(re_)}{sign}{_fmt_real(abs(im))}*i)"


def _prec(e: HoloExpr) -> int:
    return _PREC.get(type(e), _ATOM)


def to_string(e: HoloExpr) -> str:
    """Canonical text with explicit ``*`` and minimal parentheses."""
    if isinstance(e, Var):
        return "z"
    if isinstance(e, Const):
        return _format_const(e.value)
    if isinstance(e, Func):
        return f"{e.name}({to_string(e.arg)})"
    if isinstance(e, Neg):
        inner = to_string(e.arg)
        return "-" + (inner if _prec(e.arg) >= _PREC[Neg] else f"({inner})")
    if isinstance(e, Pow):
        base = to_string(e.base)
        if _prec(e.base) < _ATOM:
            base = f"({base})"
        return f"{base}^{e.exponent}"
    p = _PREC[type(e)]
    left, right = to_string(e.left), to_string(e.right)
    if _prec(e.left) < p:
        left = f"({left})"
    if _prec(e.right) <= p:
        right = f"({right})"
    return f"{left}{_OPS[type(e)]}{right}"


# ---------------------------------------------------------------------------
# Symbolic differentiation
# ---------------------------------------------------------------------------

def _dfunc(name: str, u: HoloExpr) -> HoloExpr:
    """Outer derivative f'(u) of a named function."""
    if name == "exp":
        return func("exp", u)
    if name == "log":
        return div(Const(1), u)
    if name == "sin":
        return func("cos", u)
    if name == "cos":
        return neg(func("sin", u))
    if name == "sinh":
        return func("cosh", u)
    if name == "cosh":
        return func("sinh", u)
    raise AssertionError(name)


@functools.lru_cache(maxsize=4096)
def differentiate(e: HoloExpr) -> HoloExpr:
    """Exact complex derivative d/dz of *e* (no simplification beyond 0/1 rules)."""
    if isinstance(e, Var):
        return Const(1)
    if isinstance(e, Const):
        return Const(0)
    if isinstance(e, Add):
        return add(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Sub):
        return sub(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Mul):
        return add(mul(differentiate(e.left), e.right),
                   mul(e.left, differentiate(e.right)))
    if isinstance(e, Div):
        # (a/b)' = (a'b - ab')/b^2
        a, b = e.left, e.right
        return div(sub(mul(differentiate(a), b), mul(a, differentiate(b))),
                   power(b, 2))
    if isinstance(e, Pow):
        n = e.exponent
        if n == 0:
            return Const(0)
        return mul(mul(Const(n), power(e.base, n - 1)), differentiate(e.base))
    if isinstance(e, Neg):
        return neg(differentiate(e.arg))
    if isinstance(e, Func):
        return mul(differentiate(e.arg), _dfunc(e.name, e.arg))
    raise TypeError(f"not an expression: {e!r}")


def derivatives(e: HoloExpr) -> tuple[HoloExpr, HoloExpr, HoloExpr]:
    """``(e, e', e'')`` as expression trees."""
    d1 = differentiate(e)
    return e, d1, differentiate(d1)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def evaluate(e: HoloExpr, z: complex) -> complex:
    """Value of *e* at *z*; raises :class:`DomainError` at poles and on the log cut."""
    return compiled(e)(z)


def compiled(e: HoloExpr) -> Callable[[complex], complex]:
    """*e* as a closure, built once and kept on the node."""
    fn = e.__dict__.get("_compiled")
    if fn is None:
        fn = _compile(e)
        object.__setattr__(e, "_compiled", fn)
    return fn


def _compile(e: HoloExpr) -> Callable[[complex], complex]:
    if isinstance(e, Var):
        return complex
    if isinstance(e, Const):
        v = e.value
        return lambda z: v
    if isinstance(e, (Add, Sub, Mul)):
        a, b = compiled(e.left), compiled(e.right)
        if isinstance(e, Add):
            return lambda z: a(z) + b(z)
        if isinstance(e, Sub):
            return lambda z: a(z) - b(z)
        return lambda z: a(z) * b(z)
    if isinstance(e, Div):
        a, b, right = compiled(e.left), compiled(e.right), e.right

        def div(z):
            den = b(z)
            if den == 0:
                raise DomainError("division by zero", right)
            return a(z) / den
        return div
    if isinstance(e, Pow):
        a, n = compiled(e.base), e.exponent
        return lambda z: a(z) ** n
    if isinstance(e, Neg):
        a = compiled(e.arg)
        return lambda z: -a(z)
    if isinstance(e, Func):
        a, f, arg = compiled(e.arg), FUNCTIONS[e.name], e.arg
        if e.name != "log":
            return lambda z: f(a(z))

        def log(z):
            w = a(z)
            if w.imag == 0 and w.real <= 0:
                raise DomainError("log of zero or negative real" if w != 0 else "log of zero", arg)
            return f(w)
        return log
    raise TypeError(f"not an expression: {e!r}")


@dataclass(frozen=True)
class ComplexJet:
    """Value and first two complex derivatives of a holomorphic function at a point."""

    v: complex
    d1: complex
    d2: complex


class _Jet:
    """Forward-mode second-order jet arithmetic."""

    __slots__ = ("v", "d1", "d2")

    def __init__(self, v, d1=0j, d2=0j):
        self.v, self.d1, self.d2 = v, d1, d2

    def __add__(self, o):
        return _Jet(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)

    def __sub__(self, o):
        return _Jet(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)

    def __mul__(self, o):
        return _Jet(self.v * o.v,
                    self.d1 * o.v + self.v * o.d1,
                    self.d2 * o.v + 2 * self.d1 * o.d1 + self.v * o.d2)

    def __truediv__(self, o):
        q = self.v / o.v
        q1 = (self.d1 - q * o.d1) / o.v
        q2 = (self.d2 - 2 * q1 * o.d1 - q * o.d2) / o.v
        return _Jet(q, q1, q2)

    def __neg__(self):
        return _Jet(-self.v, -self.d1, -self.d2)

    def powi(self, n: int):
        if n == 0:
            return _Jet(1 + 0j)
        if n == 1:
            return self
        vn2 = self.v ** (n - 2)
        vn1 = vn2 * self.v
        return _Jet(vn1 * self.v,
                    n * vn1 * self.d1,
                    n * (n - 1) * vn2 * self.d1 ** 2 + n * vn1 * self.d2)

    def compose(self, f0, f1, f2):
        # f(u(z)) with f0 = f(u), f1 = f'(u), f2 = f''(u)
        return _Jet(f0, f1 * self.d1, f2 * self.d1 ** 2 + f1 * self.d2)


def _func_jet(name: str, w: complex) -> tuple[complex, complex, complex]:
    if name == "exp":
        v = cmath.exp(w)
        return v, v, v
    if name == "log":
        return cmath.log(w), 1 / w, -1 / (w * w)
    if name == "sin":
        s, c = cmath.sin(w), cmath.cos(w)
        return s, c, -s
    if name == "cos":
        s, c = cmath.sin(w), cmath.cos(w)
        return c, -s, -c
    if name == "sinh":
        s, c = cmath.sinh(w), cmath.cosh(w)
        return s, c, s
    if name == "cosh":
        s, c = cmath.sinh(w), cmath.cosh(w)
        return c, s, c
    raise AssertionError(name)


def _jet(e: HoloExpr, z: complex) -> _Jet:
    if isinstance(e, Var):
        return _Jet(complex(z), 1 + 0j, 0j)
    if isinstance(e, Const):
        return _Jet(e.value)
    if isinstance(e, Add):
        return _jet(e.left, z) + _jet(e.right, z)
    if isinstance(e, Sub):
        return _jet(e.left, z) - _jet(e.right, z)
    if isinstance(e, Mul):
        return _jet(e.left, z) * _jet(e.right, z)
    if isinstance(e, Div):
        den = _jet(e.right, z)
        if den.v == 0:
            raise DomainError("division by zero", e.right)
        return _jet(e.left, z) / den
    if isinstance(e, Pow):
        return _jet(e.base, z).powi(e.exponent)
    if isinstance(e, Neg):
        return -_jet(e.arg, z)
    if isinstance(e, Func):
        u = _jet(e.arg, z)
        if e.name == "log" and u.v.imag == 0 and u.v.real <= 0:
            raise DomainError("log of zero or negative real" if u.v != 0 else "log of zero", e.arg)
        return u.compose(*_func_jet(e.name, u.v))
    raise TypeError(f"not an expression: {e!r}")


def eval_jet(e: HoloExpr, z: complex, backend: str = "symbolic") -> ComplexJet:
    """Evaluate ``(e(z), e'(z), e''(z))``.

    ``backend="symbolic"`` evaluates the differentiated trees, ``"forward"``
    propagates jets through the original tree.  Both raise :class:`DomainError`
    at singular points.
    """
    if backend == "symbolic":
        e0, e1, e2 = derivatives(e)
        return ComplexJet(evaluate(e0, z), evaluate(e1, z), evaluate(e2, z))
    if backend == "forward":
        j = _jet(e, z)
        return ComplexJet(j.v, j.d1, j.d2)
    raise ValueError(f"unknown backend {backend!r}")


def real_inner(f: complex, g: complex) -> float:
    """Euclidean inner product of f and g seen as plane vectors: Re(conj(f) g)."""
    return f.real * g.real + f.imag * g.imag


