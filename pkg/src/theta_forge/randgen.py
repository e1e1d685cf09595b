"""Seeded random instances for self-tests and the property suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .diffop import DOperator, ThetaOperator
from .hyper import FactorialBase, PFQParams
from .ratpoly import Poly
from .siegel import LinearForm


def rand_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        if q or not nonzero:
            return q


def rand_poly(rng: random.Random, deg: int) -> Poly:
    """Polynomial of exact degree ``deg``; ``deg < 0`` gives zero."""
    if deg < 0:
        return Poly()
    cs = [rand_rational(rng) for _ in range(deg)] + [rand_rational(rng, nonzero=True)]
    return Poly(cs)


def rand_form(rng: random.Random, m: int, max_deg: int = 3) -> LinearForm:
    while True:
        L = LinearForm(rand_poly(rng, rng.randint(-1, max_deg)) for _ in range(m))
        if not L.is_zero():
            return L


def rand_theta_t1(rng: random.Random, m: int | None = None, max_S: int = 3) -> ThetaOperator:
    """Δ-operator with ``S >= 0``, ``r_m = S + 1`` and ``r_j <= S``."""
    m = m or rng.choice([2, 3, 4])
    S = rng.randint(0, max_S)
    rhs = [rand_poly(rng, rng.randint(-1, S)) for _ in range(m - 1)] + [rand_poly(rng, S + 1)]
    return ThetaOperator.from_rhs(rand_poly(rng, S), rhs)


def rand_d_280(rng: random.Random, m: int | None = None, max_S: int = 3) -> DOperator:
    m = m or rng.choice([2, 3, 4])
    S = rng.randint(0, max_S)
    rhs = [rand_poly(rng, rng.randint(-1, S)) for _ in range(m - 1)] + [rand_poly(rng, S + 1)]
    return DOperator.from_rhs(rand_poly(rng, S), rhs)


def rand_d_290(rng: random.Random, m: int | None = None, max_r: int = 3) -> DOperator:
    m = m or rng.choice([2, 3, 4])
    r = rng.randint(0, max_r)
    rhs = [rand_poly(rng, rng.randint(-1, r)) for _ in range(m - 1)] + [rand_poly(rng, r)]
    return DOperator.from_rhs(rand_poly(rng, r + 1), rhs)


def rand_operator(rng: random.Random, cls, max_order: int = 6, max_deg: int = 8):
    m = rng.randint(1, max_order)
    cs = [rand_poly(rng, rng.randint(-1, max_deg)) for _ in range(m)]
    cs.append(rand_poly(rng, rng.randint(0, max_deg)))
    return cls(cs)


def rand_factorial_base(rng: random.Random, max_deg: int = 5) -> FactorialBase:
    """``P = (x + 1) Q`` with ``Q`` free of non-negative integer roots."""
    while True:
        deg_q = rng.randint(1, max_deg - 1)
        Q = rand_poly(rng, deg_q)
        try:
            return FactorialBase(Poly((1, 1)) * Q)
        except ValueError:
            continue


def rand_pfq(rng: random.Random, p: int | None = None, max_q: int = 4) -> PFQParams:
    if p is None:
        q = rng.randint(1, max_q)
        p = rng.randint(0, q - 1)
    else:
        q = rng.randint(p + 1, max_q)
    while True:
        a = [rand_rational(rng, nonzero=True) for _ in range(p)]
        b = [rand_rational(rng) for _ in range(q - 1)]
        try:
            return PFQParams(a, b)
        except ValueError:
            continue
