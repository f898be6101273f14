"""Exact scalars: integers, rationals and quadratic irrationals ``p + q*sqrt(d)``.

Integers and rationals are plain :class:`int` and :class:`fractions.Fraction`
values; only the quadratic case needs its own type.  Every arithmetic result
that passes through :func:`normalize` (or any :class:`Quadratic` operation)
is in canonical form: a rational with denominator 1 becomes an ``int`` and a
quadratic with vanishing irrational part becomes a rational.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "Quadratic",
    "Number",
    "IncompatibleField",
    "NegativeRadicand",
    "NotRepresentable",
    "normalize",
    "quadratic",
    "kind",
    "add",
    "sub",
    "mul",
    "sign",
    "sqrt_exact",
    "to_float",
    "format_number",
    "parse_number",
    "is_exact",
    "is_integer",
    "squarefree_decomposition",
]


class IncompatibleField(ValueError):
    """Arithmetic between quadratic irrationals with different radicands."""


class NegativeRadicand(ValueError):
    pass


class NotRepresentable(ValueError):
    """The requested square root does not live in any supported field."""


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(e, d)`` with ``n == e*e*d`` and ``d`` squarefree.

    Trial division stops once ``p**3`` exceeds the unfactored cofactor; what
    remains then has at most two prime factors, so it is squarefree unless it
    is a perfect square.
    """
    if n <= 0:
        raise ValueError("squarefree_decomposition needs a positive integer")
    e, d = 1, 1
    p = 2
    while p * p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            e *= p ** (k // 2)
            if k % 2:
                d *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(n)
    if r * r == n:
        e *= r
    else:
        d *= n
    return e, d


def _rational(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not exact numbers")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"expected an int or Fraction, got {type(x).__name__}")


def _collapse(x: Fraction) -> Union[int, Fraction]:
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class Quadratic:
    """``p + q*sqrt(d)`` with rational ``p, q``, ``q != 0`` and squarefree ``d >= 2``.

    Build instances with :func:`quadratic`, which normalizes; the raw
    constructor trusts its arguments.
    """

    p: Fraction
    q: Fraction
    d: int

    def _coerce(self, other):
        if isinstance(other, Quadratic):
            if other.d != self.d:
                raise IncompatibleField(
                    f"cannot combine sqrt({self.d}) and sqrt({other.d})")
            return other.p, other.q
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return quadratic(self.p + c[0], self.q + c[1], self.d)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return quadratic(self.p - c[0], self.q - c[1], self.d)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return quadratic(c[0] - self.p, c[1] - self.q, self.d)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return quadratic(self.p * a + self.q * b * self.d,
                         self.p * b + self.q * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.d

    def conjugate(self) -> "Quadratic":
        return Quadratic(self.p, -self.q, self.d)

    def inverse(self):
        # the norm never vanishes because sqrt(d) is irrational
        n = self.norm()
        return quadratic(self.p / n, -self.q / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, Quadratic):
            self._coerce(other)
            return self * other.inverse()
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return quadratic(self.p / other, self.q / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = 1
        for _ in range(abs(k)):
            result = result * base
        return result

    def __neg__(self):
        return Quadratic(-self.p, -self.q, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if sign(self) < 0 else self

    def __eq__(self, other):
        if isinstance(other, Quadratic):
            return (self.p, self.q, self.d) == (other.p, other.q, other.d)
        if isinstance(other, (int, Fraction, float)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.q, self.d))

    def _cmp(self, other):
        if isinstance(other, (Quadratic, int, Fraction)) and not isinstance(other, bool):
            return sign(self - other)
        return None

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __float__(self):
        return to_float(self)

    def __bool__(self):
        return True

    def __str__(self):
        return format_number(self)

    def __repr__(self):
        return f"Quadratic({format_number(self)!r})"


Number = Union[int, Fraction, Quadratic]


def quadratic(p, q, d: int) -> Number:
    """Normalized ``p + q*sqrt(d)``; collapses to a rational when possible."""
    p, q = _rational(p), _rational(q)
    if not isinstance(d, int) or d < 0:
        raise ValueError(f"radicand must be a non-negative integer, got {d!r}")
    if q == 0 or d == 0:
        return _collapse(p)
    e, d = squarefree_decomposition(d)
    q *= e
    if d == 1:
        return _collapse(p + q)
    return Quadratic(p, q, d)


def normalize(x) -> Number:
    """Canonical representative of an exact number (idempotent)."""
    if isinstance(x, Quadratic):
        return quadratic(x.p, x.q, x.d)
    return _collapse(_rational(x))


def kind(x) -> str:
    x = normalize(x)
    if isinstance(x, Quadratic):
        return "Quadratic"
    return "Integer" if isinstance(x, int) else "Rational"


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Quadratic)) and not isinstance(x, bool)


def is_integer(x) -> bool:
    return is_exact(x) and isinstance(normalize(x), int)


def add(a, b) -> Number:
    return normalize(a + b)


def sub(a, b) -> Number:
    return normalize(a - b)


def mul(a, b) -> Number:
    return normalize(a * b)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sign(a) -> int:
    """Exact sign of ``a``; quadratics are decided by comparing ``p**2`` with ``q**2 * d``."""
    if isinstance(a, Quadratic):
        sp, sq = _sgn(a.p), _sgn(a.q)
        if sp == 0 or sp == sq:
            return sq if sp == 0 else sp
        return sp if a.p * a.p > a.q * a.q * a.d else sq
    return _sgn(_rational(a))


def sqrt_exact(a) -> Number:
    """Exact square root of a non-negative rational.

    ``sqrt(n/m)`` is taken as ``sqrt(n*m)/m`` so that the radicand is a
    squarefree integer and the representation is unique.
    """
    if isinstance(a, Quadratic):
        raise NotRepresentable(f"square root of {format_number(a)} is not quadratic over Q")
    a = _rational(a)
    if a < 0:
        raise NegativeRadicand(f"negative radicand {format_number(a)}")
    if a == 0:
        return 0
    nd = a.numerator * a.denominator
    e, d = squarefree_decomposition(nd)
    return quadratic(0, Fraction(e, a.denominator), d)


def to_float(a) -> float:
    """Nearest double to ``a``.

    Quadratics are evaluated by bracketing ``q*sqrt(d)`` between rationals and
    refining until both ends round to the same double, so cancellation in
    values like ``3 - 2*sqrt(2)`` does not cost accuracy.
    """
    if isinstance(a, Quadratic):
        t = a.q * a.q * a.d
        s = _sgn(a.q)
        bits = 64
        while True:
            scale = 1 << bits
            num = t.numerator * t.denominator * scale * scale
            r = math.isqrt(num)
            lo = Fraction(r, t.denominator * scale)
            hi = Fraction(r + 1, t.denominator * scale)
            a_lo, a_hi = (a.p + lo, a.p + hi) if s > 0 else (a.p - hi, a.p - lo)
            f_lo, f_hi = float(a_lo), float(a_hi)
            if f_lo == f_hi:
                return f_lo
            bits *= 2
    return float(_rational(a))


def _fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_number(x, ascii: bool = False) -> str:
    """Text form: ``3``, ``-5/2`` or ``1/2+3/2√5`` (``sqrt`` instead of ``√`` if *ascii*)."""
    x = normalize(x)
    if isinstance(x, Quadratic):
        root = "sqrt" if ascii else "√"
        op = "+" if x.q > 0 else "-"
        return f"{_fmt_rational(x.p)}{op}{_fmt_rational(abs(x.q))}{root}{x.d}"
    return _fmt_rational(x)


_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")
_RADICAL = re.compile(r"(√|sqrt)\(?(\d+)\)?$")


def _parse_rat(tok: str) -> Fraction:
    if not _RAT.match(tok):
        raise ValueError(f"not a rational number: {tok!r}")
    if "/" in tok:
        n, m = tok.split("/")
        if int(m) == 0:
            raise ValueError(f"zero denominator in {tok!r}")
        return Fraction(int(n), int(m))
    return Fraction(int(tok))


def parse_number(text: str) -> Number:
    """Parse the output of :func:`format_number`.

    Also accepts shorthand such as ``√2``, ``-sqrt2``, ``sqrt(3)``, ``2√3``
    and ``1+√5``.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty number")
    m = _RADICAL.search(s)
    if m is None:
        return normalize(_parse_rat(s))
    d = int(m.group(2))
    left = s[:m.start()]
    cut = max(left.rfind("+"), left.rfind("-"))
    if cut > 0:
        p = _parse_rat(left[:cut])
        qtok = left[cut:]
    else:
        p = Fraction(0)
        qtok = left
    if qtok in ("", "+"):
        q = Fraction(1)
    elif qtok == "-":
        q = Fraction(-1)
    else:
        q = _parse_rat(qtok)
    if d == 0:
        raise ValueError(f"radicand must be positive in {text!r}")
    return quadratic(p, q, d)
