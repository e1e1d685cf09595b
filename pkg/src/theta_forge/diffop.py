"""Linear differential operators in the ``D = d/dt`` and ``Δ = tD`` bases.

Both operator types store coefficients ``c_0..c_m`` with ``c_i`` multiplying
the i-th power of the derivation.  The right-hand-side view used when the
equation is written as ``N Δ^m F = P_1 Δ^{m-1} F + ... + P_m F`` is exposed
through :attr:`ThetaOperator.N` and :meth:`ThetaOperator.P` (and ``T``/``Q``
for the D basis).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import TruncationTooShort
from .ratpoly import Degree, Poly


class _Operator:
    __slots__ = ("coeffs",)
    symbol = "?"

    def __init__(self, coeffs: Sequence):
        cs = [Poly.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            raise ValueError("the zero operator has no order")
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def from_rhs(cls, lead, rhs: Sequence):
        """Build ``lead·X^m - rhs[0]·X^{m-1} - ... - rhs[m-1]``."""
        m = len(rhs)
        cs = [Poly()] * (m + 1)
        cs[m] = Poly.coerce(lead)
        for j, p in enumerate(rhs, start=1):
            cs[m - j] = -Poly.coerce(p)
        return cls(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Poly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Poly()

    @property
    def lead(self) -> Poly:
        return self.coeffs[-1]

    def rhs(self, j: int) -> Poly:
        """Coefficient ``P_j`` (or ``Q_j``) of the right-hand-side view, 1 <= j <= m."""
        if not 1 <= j <= self.order:
            raise IndexError(j)
        return -self.coeffs[self.order - j]

    @property
    def lead_degree(self) -> Degree:
        return self.lead.deg

    def rhs_degrees(self) -> list[Degree]:
        return [self.rhs(j).deg for j in range(1, self.order + 1)]

    def scale(self, q: Poly) -> "_Operator":
        return type(self)([q * c for c in self.coeffs])

    def shift(self, e: int) -> "_Operator":
        """Left-multiply by ``t**e`` (``e`` may be negative when exact)."""
        return type(self)([c.shift(e) for c in self.coeffs])

    def t_valuation(self) -> int:
        return min(c.valuation for c in self.coeffs if c)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.coeffs))

    def __repr__(self):
        from .opparse import print_operator

        return f"{type(self).__name__}({print_operator(self)!r})"


class ThetaOperator(_Operator):
    """Operator ``sum a_i(t) Δ^i``."""

    symbol = "T"

    @property
    def N(self) -> Poly:
        return self.lead

    def P(self, j: int) -> Poly:
        return self.rhs(j)

    @property
    def S(self) -> Degree:
        return self.lead_degree


class DOperator(_Operator):
    """Operator ``sum q_i(t) D^i``."""

    symbol = "D"

    @property
    def T(self) -> Poly:
        return self.lead

    def Q(self, j: int) -> Poly:
        return self.rhs(j)

    @property
    def S(self) -> Degree:
        return self.lead_degree


@dataclass(frozen=True)
class StirlingTable:
    max_n: int
    _s1: tuple[tuple[int, ...], ...]
    _s2: tuple[tuple[int, ...], ...]

    def s1(self, n: int, k: int) -> int:
        """Signed Stirling number of the first kind."""
        if k < 0 or k > n:
            return 0
        return self._s1[n][k]

    def S2(self, n: int, k: int) -> int:
        if k < 0 or k > n:
            return 0
        return self._s2[n][k]


def stirling(table_size: int) -> StirlingTable:
    if table_size < 0:
        raise ValueError("table_size must be non-negative")
    s1 = [[1]]
    s2 = [[1]]
    for n in range(table_size):
        prev1, prev2 = s1[-1], s2[-1]
        row1, row2 = [0] * (n + 2), [0] * (n + 2)
        for k in range(1, n + 2):
            a1 = prev1[k - 1]
            b1 = prev1[k] if k <= n else 0
            row1[k] = a1 - n * b1
            a2 = prev2[k - 1]
            b2 = prev2[k] if k <= n else 0
            row2[k] = a2 + k * b2
        s1.append(row1)
        s2.append(row2)
    return StirlingTable(table_size, tuple(map(tuple, s1)), tuple(map(tuple, s2)))


_table_lock = threading.Lock()
_shared_table = stirling(16)


def shared_stirling(n: int) -> StirlingTable:
    """Process-wide table covering at least ``n``; grown on demand, never mutated."""
    global _shared_table
    table = _shared_table
    if table.max_n >= n:
        return table
    with _table_lock:
        if _shared_table.max_n < n:
            _shared_table = stirling(max(n, 2 * _shared_table.max_n))
        return _shared_table


def d_to_theta(op: DOperator) -> ThetaOperator:
    """Rewrite ``op`` in the Δ basis after left-multiplying by the minimal ``t**e``.

    ``e`` is the least integer with ``t^(e-i) q_i`` polynomial for every
    nonzero ``q_i``; it can be negative when every coefficient carries spare
    factors of ``t``.
    """
    e = max(i - c.valuation for i, c in enumerate(op.coeffs) if c)
    table = shared_stirling(op.order)
    out = [Poly()] * (op.order + 1)
    for i, q in enumerate(op.coeffs):
        if not q:
            continue
        cleared = q.shift(e - i)
        for k in range(i + 1):
            s = table.s1(i, k)
            if s:
                out[k] = out[k] + cleared.scale(s)
    return ThetaOperator(out)


def theta_to_d(op: ThetaOperator) -> DOperator:
    table = shared_stirling(op.order)
    out = [Poly()] * (op.order + 1)
    for n, a in enumerate(op.coeffs):
        if not a:
            continue
        for k in range(n + 1):
            s = table.S2(n, k)
            if s:
                out[k] = out[k] + a.shift(k).scale(s)
    return DOperator(out)


def connection_matrix(m: int) -> list[list[Poly]]:
    """Row ``n`` expresses ``Δ^n`` in ``t^k D^k``: entry ``S2(n,k) t^k``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    table = shared_stirling(m)
    return [[Poly.monomial(k, table.S2(n, k)) for k in range(m)] for n in range(m)]


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series in ``t`` with coefficients known through ``trunc_order``."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Sequence):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    @property
    def trunc_order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(len(self.coeffs), len(other.coeffs))
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])])

    def scale(self, c) -> TruncatedSeries:
        return TruncatedSeries([c * x for x in self.coeffs])

    def truncate(self, order: int) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs[: order + 1])

    def mul_poly(self, p: Poly) -> TruncatedSeries:
        out = [Fraction(0)] * len(self.coeffs)
        for u, a in enumerate(p.coeffs):
            if a:
                for v in range(len(self.coeffs) - u):
                    out[u + v] += a * self.coeffs[v]
        return TruncatedSeries(out)

    def delta(self) -> TruncatedSeries:
        return TruncatedSeries([n * c for n, c in enumerate(self.coeffs)])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def first_nonzero(self) -> int | None:
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None


def apply_theta(op: ThetaOperator, f: TruncatedSeries) -> TruncatedSeries:
    size = len(f.coeffs)
    out = [Fraction(0)] * size
    for i, a in enumerate(op.coeffs):
        if not a:
            continue
        for u, au in enumerate(a.coeffs):
            if not au:
                continue
            for v in range(size - u):
                fv = f.coeffs[v]
                if fv:
                    out[u + v] += au * v**i * fv
    return TruncatedSeries(out)


def _falling(v: int, i: int) -> int:
    r = 1
    for j in range(i):
        r *= v - j
    return r


def apply_d(op: DOperator, f: TruncatedSeries) -> TruncatedSeries:
    """Apply ``op``; every ``D`` costs one order of reliability."""
    trunc = f.trunc_order - op.order
    if trunc < 0:
        raise TruncationTooShort(
            f"series known through order {f.trunc_order} is too short for an order-{op.order} operator"
        )
    out = [Fraction(0)] * (trunc + 1)
    for i, q in enumerate(op.coeffs):
        for u, qu in enumerate(q.coeffs):
            if not qu:
                continue
            for n in range(u, trunc + 1):
                v = n - u + i
                fv = f.coeffs[v]
                if fv:
                    out[n] += qu * _falling(v, i) * fv
    return TruncatedSeries(out)
