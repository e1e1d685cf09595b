"""Example families: factorial-type series and entire hypergeometric series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .diffop import ThetaOperator, TruncatedSeries, apply_theta
from .errors import DivisionNotExact, InvalidParameters, ZeroDenominator
from .ratpoly import Poly, poly_exact_div


def _nonnegative_integer_roots(p: Poly) -> list[int]:
    """Non-negative integer roots, searched up to the Cauchy root bound."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    lead = abs(p.lc)
    bound = 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))
    return [k for k in range(math.floor(bound) + 1) if p(k) == 0]


@dataclass(frozen=True)
class FactorialBase:
    """Polynomial ``P`` with ``P(-1) = 0`` and no root at ``0, 1, 2, ...``."""

    P: Poly

    def __post_init__(self):
        P = self.P
        if P.is_zero() or P.deg < 2:
            raise InvalidParameters("P must have degree m >= 2")
        if P(-1) != 0:
            raise InvalidParameters("P(-1) = 0 is required")
        roots = _nonnegative_integer_roots(P)
        if roots:
            raise InvalidParameters(f"P vanishes at the non-negative integer {roots[0]}")

    @property
    def m(self) -> int:
        return self.P.deg


@dataclass(frozen=True)
class PFQParams:
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    def __init__(self, a: Sequence = (), b: Sequence = ()):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in a))
        object.__setattr__(self, "b", tuple(Fraction(x) for x in b))
        if self.p >= self.q:
            raise InvalidParameters(f"need p < q, got p={self.p}, q={self.q}")
        for bj in self.b:
            if bj.denominator == 1 and bj <= 0:
                raise InvalidParameters(f"lower parameter {bj} is zero or a negative integer")

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def q(self) -> int:
        return len(self.b) + 1

    def integer_differences(self) -> list[tuple[Fraction, Fraction]]:
        """Pairs ``(a_i, b_j)`` with integral difference, ``b_q = 1`` included."""
        lows = list(self.b) + [Fraction(1)]
        return [(a, b) for a in self.a for b in lows if (a - b).denominator == 1]


def _theta_product(shifts: Sequence[Fraction]) -> Poly:
    """``prod (y + s)`` as a polynomial in ``y``."""
    out = Poly.const(1)
    for s in shifts:
        out = out * Poly((s, 1))
    return out


def kummer_type_operator(fb: FactorialBase) -> ThetaOperator:
    """``Δ P_1(Δ) - t`` where ``P(x) = (x + 1) P_1(x + 1)``."""
    shifted = fb.P.compose_shift(-1)
    try:
        p1 = poly_exact_div(shifted, Poly.t())
    except DivisionNotExact:
        raise DivisionNotExact("P(-1) != 0, so P(x) is not (x+1)P_1(x+1)") from None
    lhs = p1.shift(1)
    cs = [Poly.const(c) for c in lhs.coeffs]
    cs[0] = cs[0] - Poly.t()
    return ThetaOperator(cs)


def factorial_series(fb: FactorialBase, n_terms: int) -> TruncatedSeries:
    if n_terms < 1:
        raise ValueError("need at least one term")
    coeffs = [Fraction(1)]
    for k in range(n_terms - 1):
        pk = fb.P(k)
        if pk == 0:
            raise ZeroDenominator(f"P({k}) = 0")
        coeffs.append(coeffs[-1] / pk)
    return TruncatedSeries(coeffs)


def pfq_operator(params: PFQParams) -> ThetaOperator:
    """``Δ prod(Δ + b_j - 1) - t prod(Δ + a_i)``."""
    left = _theta_product([Fraction(0)] + [b - 1 for b in params.b])
    right = _theta_product(params.a)
    cs = [Poly.const(c) for c in left.coeffs]
    for i, c in enumerate(right.coeffs):
        cs[i] = cs[i] - Poly.monomial(1, c)
    return ThetaOperator(cs)


def pochhammer(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for j in range(n):
        out *= a + j
    return out


def pfq_series(params: PFQParams, n_terms: int) -> TruncatedSeries:
    """Coefficients ``prod (a_i)_n / (n! prod (b_j)_n)`` built term by term."""
    if n_terms < 1:
        raise ValueError("need at least one term")
    coeffs = [Fraction(1)]
    for n in range(1, n_terms):
        den = n
        for b in params.b:
            den *= b + n - 1
        if den == 0:
            raise ZeroDenominator(f"Pochhammer denominator vanishes at n = {n}")
        num = Fraction(1)
        for a in params.a:
            num *= a + n - 1
        coeffs.append(coeffs[-1] * num / den)
    return TruncatedSeries(coeffs)


def first_failing_order(op: ThetaOperator, f: TruncatedSeries) -> int | None:
    return apply_theta(op, f).first_nonzero()


def annihilation_check(op: ThetaOperator, f: TruncatedSeries) -> bool:
    return first_failing_order(op, f) is None
