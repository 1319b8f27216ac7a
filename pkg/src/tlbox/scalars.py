"""Exact arithmetic in the field of rational functions of the loop modulus.

Every linear object in this package is defined over ``Scalar``: an exact
rational function in one variable ``d`` (the loop modulus) with arbitrary
precision integer coefficients.  Values are kept in a canonical form so that
structural equality coincides with mathematical equality:

* numerator and denominator are dense ascending coefficient tuples with no
  trailing zeros (the zero polynomial is ``(0,)``);
* the fraction is reduced: the polynomial gcd of numerator and denominator
  is constant, and the integer content gcd of the pair is 1;
* the denominator's leading coefficient is positive;
* zero is uniquely ``0/1``.

Negative powers of the modulus are ordinary denominators (``1/d^k``); there
is no Laurent representation.  Printing uses the grammar
``num/den`` with polynomials rendered ascending, e.g. ``1 + d``, ``2*d^3``,
``(1 + d)/(d^2)`` and parsing accepts everything printing emits.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Union

__all__ = [
    "PoleError",
    "Scalar",
    "ZERO",
    "ONE",
    "DELTA",
    "scalar_arithmetic",
    "evaluate_numeric",
    "parse_scalar",
]


class PoleError(ArithmeticError):
    """Raised when a rational function is evaluated at a denominator root."""


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (ascending coefficient tuples)
# ---------------------------------------------------------------------------

_PZERO = (0,)
_PONE = (1,)


def _ptrim(cs: Iterable[int]) -> tuple[int, ...]:
    """Drop trailing zero coefficients, keeping ``(0,)`` for the zero poly."""
    cs = list(cs)
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return tuple(cs) if cs else _PZERO


def _pis_zero(p: tuple[int, ...]) -> bool:
    return len(p) == 1 and p[0] == 0


def _padd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _ptrim(out)


def _psub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _ptrim(out)


def _pneg(a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-c for c in a)


def _pmul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if _pis_zero(a) or _pis_zero(b):
        return _PZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _ptrim(out)


def _pscale(a: tuple[int, ...], c: int) -> tuple[int, ...]:
    if c == 0:
        return _PZERO
    return tuple(x * c for x in a)


def _pcontent(a: tuple[int, ...]) -> int:
    g = 0
    for c in a:
        g = _int_gcd(g, abs(c))
        if g == 1:
            break
    return g or 1


def _pprimitive(a: tuple[int, ...]) -> tuple[int, ...]:
    g = _pcontent(a)
    if g == 1:
        return a
    return tuple(c // g for c in a)


def _pgcd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Primitive polynomial gcd over the integers (monic-free, content 1)."""
    if _pis_zero(a):
        return _pprimitive(b)
    if _pis_zero(b):
        return _pprimitive(a)
    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]
    while fb and any(fb):
        while len(fb) > 1 and fb[-1] == 0:
            fb.pop()
        if len(fb) == 1 and fb[0] == 0:
            break
        if len(fa) < len(fb):
            fa, fb = fb, fa
            continue
        lead = fb[-1]
        while len(fa) >= len(fb) and not (len(fa) == 1 and fa[0] == 0):
            shift = len(fa) - len(fb)
            q = fa[-1] / lead
            for i, c in enumerate(fb):
                fa[i + shift] -= q * c
            while len(fa) > 1 and fa[-1] == 0:
                fa.pop()
            if len(fa) == 1 and fa[0] == 0:
                break
        fa, fb = fb, fa
    den_lcm = 1
    for c in fa:
        den_lcm = den_lcm * c.denominator // _int_gcd(den_lcm, c.denominator)
    ints = _ptrim([int(c * den_lcm) for c in fa])
    ints = _pprimitive(ints)
    if ints[-1] < 0:
        ints = _pneg(ints)
    return ints


def _pdiv_exact(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Exact polynomial division ``a // b`` (raises if not divisible)."""
    if _pis_zero(a):
        return _PZERO
    if _pis_zero(b):
        raise ZeroDivisionError("polynomial division by zero")
    ra = [Fraction(c) for c in a]
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    for k in range(len(out) - 1, -1, -1):
        q = ra[k + len(b) - 1] / lead
        out[k] = q
        if q:
            for i, c in enumerate(b):
                ra[k + i] -= q * c
    if any(ra[: len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    res = []
    for c in out:
        if c.denominator != 1:
            raise ArithmeticError("inexact polynomial division")
        res.append(int(c))
    return _ptrim(res)


def _peval(p: tuple[int, ...], x: float) -> float:
    acc = 0.0
    for c in reversed(p):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------

_IntLike = Union[int, "Scalar"]


class Scalar:
    """Reduced fraction of integer polynomials in the loop modulus ``d``.

    Instances are immutable and canonical: two equal rational functions are
    structurally identical, so ``==`` and ``hash`` are cheap and exact.
    """

    __slots__ = ("num", "den", "_hash")

    num: tuple[int, ...]
    den: tuple[int, ...]

    def __init__(self, num, den=(1,), *, _canonical: bool = False):
        if isinstance(num, int):
            num = (num,)
        if isinstance(den, int):
            den = (den,)
        num = _ptrim(num)
        den = _ptrim(den)
        if not _canonical:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", hash((num, den)))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "Scalar":
        return Scalar((n,), _PONE, _canonical=True)

    @staticmethod
    def delta_power(k: int) -> "Scalar":
        """The monomial ``d^k``; negative ``k`` lands in the denominator."""
        if k >= 0:
            return Scalar((0,) * k + (1,), _PONE, _canonical=True)
        return Scalar(_PONE, (0,) * (-k) + (1,), _canonical=True)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return _pis_zero(self.num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other: _IntLike) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, int):
            return Scalar.from_int(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: _IntLike) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        if self.den == o.den:
            return Scalar(_padd(self.num, o.num), self.den)
        return Scalar(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __sub__(self, other: _IntLike) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.__add__(o.__neg__())

    def __rsub__(self, other: _IntLike) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__sub__(self)

    def __neg__(self) -> "Scalar":
        return Scalar(_pneg(self.num), self.den, _canonical=True)

    def __mul__(self, other: _IntLike) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return ZERO
        return Scalar(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other: _IntLike) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        if self.is_zero():
            return ZERO
        return Scalar(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other: _IntLike) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__truediv__(self)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverting the zero scalar")
        return Scalar(self.den, self.num)

    # -- comparison and hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return self._hash

    # -- rendering -----------------------------------------------------------

    def render(self) -> str:
        """Canonical text form; ``parse_scalar`` inverts this exactly."""
        if self.is_zero():
            return "0"
        num_s = _poly_str(self.num)
        if self.den == _PONE:
            return num_s
        den_s = _poly_str(self.den)
        if _poly_terms(self.num) > 1:
            num_s = f"({num_s})"
        if not _poly_is_atom(self.den):
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"Scalar({self.render()!r})"

    def __str__(self) -> str:
        return self.render()

    # -- numeric specialization ----------------------------------------------

    def evaluate(self, delta_value: float) -> float:
        """Evaluate at a numeric modulus; raise ``PoleError`` at roots."""
        dv = _peval(self.den, float(delta_value))
        if abs(dv) < 1e-12:
            raise PoleError(
                f"denominator vanishes at modulus {delta_value!r}"
            )
        return _peval(self.num, float(delta_value)) / dv

    # -- serialization ---------------------------------------------------------

    def to_doc(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}

    @staticmethod
    def from_doc(doc: dict) -> "Scalar":
        num = doc.get("num")
        den = doc.get("den")
        if not isinstance(num, list) or not isinstance(den, list):
            raise ValueError("scalar document needs integer lists 'num' and 'den'")
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in num + den):
            raise ValueError("scalar coefficients must be integers")
        if _pis_zero(_ptrim(den)):
            raise ValueError("scalar document has zero denominator")
        return Scalar(tuple(num), tuple(den))

    def is_canonical_doc(self, doc: dict) -> bool:
        """True when ``doc`` already equals this scalar's canonical document."""
        return doc == self.to_doc()


def _reduce(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if _pis_zero(den):
        raise ZeroDivisionError("scalar with zero denominator")
    if _pis_zero(num):
        return _PZERO, _PONE
    g = _pgcd(num, den)
    if g != _PONE:
        num = _pdiv_exact(num, g)
        den = _pdiv_exact(den, g)
    cg = _int_gcd(_pcontent(num), _pcontent(den))
    if cg > 1:
        num = tuple(c // cg for c in num)
        den = tuple(c // cg for c in den)
    if den[-1] < 0:
        num = _pneg(num)
        den = _pneg(den)
    return num, den


# ---------------------------------------------------------------------------
# printing helpers
# ---------------------------------------------------------------------------


def _poly_terms(p: tuple[int, ...]) -> int:
    return sum(1 for c in p if c)


def _poly_is_atom(p: tuple[int, ...]) -> bool:
    """Single positive unit-coefficient monomial or bare positive constant."""
    if _poly_terms(p) != 1:
        return _pis_zero(p)
    deg = max(i for i, c in enumerate(p) if c)
    c = p[deg]
    if deg == 0:
        return c > 0
    return c == 1


def _term_str(c: int, deg: int) -> str:
    if deg == 0:
        return str(c)
    power = "d" if deg == 1 else f"d^{deg}"
    if c == 1:
        return power
    return f"{c}*{power}"


def _poly_str(p: tuple[int, ...]) -> str:
    if _pis_zero(p):
        return "0"
    parts: list[str] = []
    for deg, c in enumerate(p):
        if not c:
            continue
        if not parts:
            parts.append(_term_str(c, deg) if c > 0 else "-" + _term_str(-c, deg))
        elif c > 0:
            parts.append("+ " + _term_str(c, deg))
        else:
            parts.append("- " + _term_str(-c, deg))
    return " ".join(parts)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


class _Parser:
    """Recursive-descent parser for the rendered scalar grammar."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> ValueError:
        return ValueError(f"cannot parse scalar {self.text!r} at {self.pos}: {msg}")

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def parse(self) -> Scalar:
        value = self.parse_poly_expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing input")
        return value

    def parse_poly_expr(self) -> Scalar:
        value = self.parse_factor()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                value = value + self.parse_factor()
            elif ch == "-":
                self.pos += 1
                value = value - self.parse_factor()
            else:
                return value

    def parse_factor(self) -> Scalar:
        value = self.parse_atom()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                value = value * self.parse_atom()
            elif ch == "/":
                self.pos += 1
                divisor = self.parse_atom()
                if divisor.is_zero():
                    raise self.error("division by zero")
                value = value / divisor
            else:
                return value

    def parse_atom(self) -> Scalar:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.parse_poly_expr()
            if not self.take(")"):
                raise self.error("expected ')'")
            return self.maybe_power(value)
        if ch == "-":
            self.pos += 1
            return -self.parse_atom()
        if ch == "+":
            self.pos += 1
            return self.parse_atom()
        if ch == "d":
            self.pos += 1
            return self.maybe_power(DELTA)
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return self.maybe_power(Scalar.from_int(int(self.text[start : self.pos])))
        raise self.error("expected a term")

    def maybe_power(self, base: Scalar) -> Scalar:
        if self.peek() != "^":
            return base
        self.pos += 1
        self.skip_ws()
        neg = self.take("-")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an exponent")
        exp = int(self.text[start : self.pos])
        out = ONE
        for _ in range(exp):
            out = out * base
        return out.inverse() if neg else out


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical rendering (and simple arithmetic) of a scalar."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# module-level conveniences
# ---------------------------------------------------------------------------

ZERO = Scalar.from_int(0)
ONE = Scalar.from_int(1)
DELTA = Scalar.delta_power(1)


def scalar_arithmetic(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Dispatch exact field arithmetic by operation name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown scalar operation {op!r}")


def evaluate_numeric(a: Scalar, delta_value: float) -> float:
    """Evaluate ``a`` at a numeric modulus; raise ``PoleError`` at poles."""
    return a.evaluate(delta_value)
