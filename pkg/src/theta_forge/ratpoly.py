"""Exact rationals and dense univariate polynomials in ``t`` over them.

Rationals are :class:`fractions.Fraction`, which is always stored reduced
with a positive denominator.  A :class:`Poly` is an immutable tuple of
coefficients, lowest degree first, with trailing zeros stripped; the zero
polynomial has no coefficients and degree :data:`NEG_INF`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

from .errors import DivisionByZero, DivisionNotExact

Rational = Fraction

__all__ = [
    "Rational",
    "NEG_INF",
    "Poly",
    "poly_add",
    "poly_mul",
    "poly_deg",
    "delta_apply",
    "d_apply",
    "poly_exact_div",
]


@total_ordering
class _NegInf:
    """Degree of the zero polynomial: below every integer, absorbing under +."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("NEG_INF")

    def __add__(self, other):
        if isinstance(other, (int, _NegInf)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    def __reduce__(self):
        return (_NegInf, ())


NEG_INF = _NegInf()

Degree = Union[int, _NegInf]
Coeff = Union[int, Fraction]


def _strip(cs: Iterable[Coeff]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in cs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Poly:
    """Immutable dense polynomial in ``t`` with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Coeff] = ()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c: Coeff) -> Poly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Coeff = 1) -> Poly:
        return cls((0,) * k + (c,))

    @classmethod
    def t(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def coerce(cls, x) -> Poly:
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls((x,))
        raise TypeError(f"cannot make a Poly from {type(x).__name__}")

    @property
    def deg(self) -> Degree:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def valuation(self) -> Degree:
        """Lowest power of ``t`` with nonzero coefficient (``NEG_INF`` for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        from .opparse import print_poly

        return f"Poly({print_poly(self)!r})"

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __add__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return poly_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return poly_add(self, -other)

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative exponent")
        result, base = Poly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Coeff) -> Poly:
        return Poly(c * x for x in self.coeffs)

    def shift(self, k: int) -> Poly:
        """Multiply by ``t**k``; negative ``k`` drops low terms that must be zero."""
        if k >= 0:
            return Poly((0,) * k + self.coeffs) if self.coeffs else self
        if any(self.coeffs[: -k]):
            raise DivisionNotExact(f"{self!r} is not divisible by t^{-k}")
        return Poly(self.coeffs[-k:])

    def __call__(self, x: Coeff) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_shift(self, a: Coeff) -> Poly:
        """Return ``p(t + a)``."""
        acc = Poly()
        lin = Poly((a, 1))
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(other.coeffs) - 1] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly(quot), Poly(rem)


def poly_add(a: Poly, b: Poly) -> Poly:
    if len(a.coeffs) < len(b.coeffs):
        a, b = b, a
    out = list(a.coeffs)
    for i, c in enumerate(b.coeffs):
        out[i] += c
    return Poly(out)


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a.coeffs or not b.coeffs:
        return Poly()
    out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return Poly(out)


def poly_deg(a: Poly) -> Degree:
    return a.deg


def delta_apply(a: Poly) -> Poly:
    """Apply the Euler derivation ``t d/dt``: ``t^k -> k t^k``."""
    return Poly(k * c for k, c in enumerate(a.coeffs))


def d_apply(a: Poly) -> Poly:
    return Poly(k * c for k, c in enumerate(a.coeffs) if k)


def poly_exact_div(a: Poly, b: Poly) -> Poly:
    q, r = a.divmod(b)
    if r:
        raise DivisionNotExact(f"{a!r} is not divisible by {b!r}")
    return q
