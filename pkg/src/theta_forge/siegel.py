"""Siegel-type linear forms, their determinants, and the degree conditions.

A linear form of length ``m`` stores ``(A_1, ..., A_m)`` where ``A_j``
multiplies the ``(m - j)``-th derivative, so ``A_1`` pairs with the highest
derivative and ``A_m`` with the function itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Literal, Sequence, Union

from .diffop import DOperator, ThetaOperator, TruncatedSeries
from .errors import ConditionViolated, OrderMismatch, ZeroInitialForm
from .ratpoly import NEG_INF, Degree, Poly, d_apply, delta_apply, poly_exact_div

Basis = Literal["theta", "d"]


@dataclass(frozen=True)
class LinearForm:
    A: tuple[Poly, ...]

    def __init__(self, A: Iterable):
        object.__setattr__(self, "A", tuple(Poly.coerce(a) for a in A))

    @property
    def m(self) -> int:
        return len(self.A)

    def __getitem__(self, j: int) -> Poly:
        """1-based component access, matching ``A_{n,j}``."""
        return self.A[j - 1]

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.A)

    def degrees(self) -> tuple[Degree, ...]:
        return tuple(a.deg for a in self.A)

    def __add__(self, other: LinearForm) -> LinearForm:
        if other.m != self.m:
            raise OrderMismatch("forms of different length")
        return LinearForm(a + b for a, b in zip(self.A, other.A))

    def scale(self, c) -> LinearForm:
        return LinearForm(a * c for a in self.A)

    def pair(self, derivatives: Sequence[TruncatedSeries]) -> TruncatedSeries:
        """Evaluate the form given the derivatives ``[X^0 f, ..., X^{m-1} f]``."""
        m = self.m
        total = None
        for j, a in enumerate(self.A, start=1):
            term = derivatives[m - j].mul_poly(a)
            total = term if total is None else total + term
        return total


@dataclass(frozen=True)
class FormMatrix:
    k: int
    rows: tuple[LinearForm, ...]

    @property
    def m(self) -> int:
        return len(self.rows)

    def entries(self) -> list[list[Poly]]:
        return [list(r.A) for r in self.rows]

    def degree_grid(self) -> list[list[Degree]]:
        return [list(r.degrees()) for r in self.rows]


@dataclass(frozen=True)
class DegreeProfile:
    d: tuple[Degree, ...]
    l: int

    @property
    def d_l(self) -> int:
        return self.d[self.l - 1]


def _check_order(op, L: LinearForm):
    if L.m != op.order:
        raise OrderMismatch(f"form has {L.m} components but the operator has order {op.order}")


def iterate_theta(op: ThetaOperator, L: LinearForm) -> LinearForm:
    """One step ``L -> N Δ L`` reduced with the equation."""
    _check_order(op, L)
    m, N, A = op.order, op.N, L.A
    out = []
    for j in range(1, m + 1):
        a = op.P(j) * A[0] + N * delta_apply(A[j - 1])
        if j < m:
            a = a + N * A[j]
        out.append(a)
    return LinearForm(out)


def iterate_d(op: DOperator, R: LinearForm) -> LinearForm:
    """One step ``R -> T D R`` reduced with the equation."""
    _check_order(op, R)
    m, T, B = op.order, op.T, R.A
    out = []
    for j in range(1, m + 1):
        b = op.Q(j) * B[0] + T * d_apply(B[j - 1])
        if j < m:
            b = b + T * B[j]
        out.append(b)
    return LinearForm(out)


def _stepper(op, basis: Basis | None):
    if basis is None:
        basis = "theta" if isinstance(op, ThetaOperator) else "d"
    if basis == "theta":
        if not isinstance(op, ThetaOperator):
            raise TypeError("theta basis needs a ThetaOperator")
        return iterate_theta
    if basis == "d":
        if not isinstance(op, DOperator):
            raise TypeError("d basis needs a DOperator")
        return iterate_d
    raise ValueError(f"unknown basis {basis!r}")


def iterates(op, L0: LinearForm, count: int, basis: Basis | None = None) -> list[LinearForm]:
    """``[L_0, ..., L_{count-1}]``."""
    step = _stepper(op, basis)
    _check_order(op, L0)
    out = [L0]
    for _ in range(count - 1):
        out.append(step(op, out[-1]))
    return out[:count]


def build_matrix(op, L0: LinearForm, k: int, basis: Basis | None = None) -> FormMatrix:
    if k < 0:
        raise ValueError("k must be non-negative")
    if L0.is_zero():
        raise ZeroInitialForm("initial linear form is identically zero")
    seq = iterates(op, L0, k + op.order, basis)
    return FormMatrix(k, tuple(seq[k:]))


def _det_cofactor(M: list[list[Poly]]) -> Poly:
    n = len(M)
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = Poly()
    for c in range(n):
        if M[0][c].is_zero():
            continue
        minor = [row[:c] + row[c + 1:] for row in M[1:]]
        term = M[0][c] * _det_cofactor(minor)
        total = total + term if c % 2 == 0 else total - term
    return total


def _det_bareiss(M: list[list[Poly]]) -> Poly:
    n = len(M)
    if n == 0:
        return Poly.const(1)
    A = [list(row) for row in M]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if A[k][k].is_zero():
            for r in range(k + 1, n):
                if not A[r][k].is_zero():
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return Poly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = poly_exact_div(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return -det if sign < 0 else det


Matrixish = Union[FormMatrix, Sequence[Sequence[Poly]]]


def det_poly(M: Matrixish, method: str = "auto") -> Poly:
    """Exact determinant; ``auto`` uses cofactor expansion up to 4x4."""
    rows = M.entries() if isinstance(M, FormMatrix) else [[Poly.coerce(x) for x in r] for r in M]
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("matrix is not square")
    if method == "auto":
        method = "cofactor" if len(rows) <= 4 else "fraction_free"
    if method == "cofactor":
        return _det_cofactor(rows)
    if method == "fraction_free":
        return _det_bareiss(rows)
    raise ValueError(f"unknown determinant method {method!r}")


def det_leibniz(M: Sequence[Sequence[Poly]]) -> Poly:
    """Permutation-sum determinant; slow, kept as an independent oracle."""
    n = len(M)
    total = Poly()
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Poly.const(1)
        for i, p in enumerate(perm):
            term = term * M[i][p]
            if term.is_zero():
                break
        total = total - term if inv % 2 else total + term
    return total


def degree_profile(L: LinearForm) -> DegreeProfile:
    if L.is_zero():
        raise ZeroInitialForm("degree profile of the zero form is undefined")
    d = L.degrees()
    top = max(d)
    return DegreeProfile(d, d.index(top) + 1)


def check_T1(op: ThetaOperator) -> bool:
    S = op.S
    r = op.rhs_degrees()
    return S >= 0 and r[-1] == S + 1 and all(rj < r[-1] for rj in r[:-1])


@dataclass(frozen=True)
class T2Conditions:
    cond280: bool
    cond290: bool

    def __bool__(self):
        return self.cond280 or self.cond290


def check_T2(op: DOperator) -> T2Conditions:
    S = op.S
    r = op.rhs_degrees()
    rm = r[-1]
    c280 = S >= 0 and rm == S + 1 and all(rj < rm for rj in r[:-1])
    c290 = rm >= 0 and S == rm + 1 and all(rj <= rm for rj in r)
    return T2Conditions(c280, c290)


def predict_degree(op: ThetaOperator, L: LinearForm) -> int:
    """Closed-form degree of the determinant whose top row is ``L``."""
    if not check_T1(op):
        raise ConditionViolated("operator degrees do not satisfy S >= 0, r_m = S+1, r_j < r_m")
    prof = degree_profile(L)
    m, S = op.order, op.S
    return m * prof.d_l + (m * m - m) * S // 2 + m - prof.l


@dataclass
class Window:
    k: int
    degree_grid: list[list[Degree]]
    det: Poly
    det_degree: Degree
    predicted_degree: int | None
    nonzero: bool


@dataclass
class NonvanishingReport:
    basis: Basis
    order: int
    conditions_hold: bool
    guaranteed: bool
    windows: list[Window] = field(default_factory=list)

    @property
    def all_nonzero(self) -> bool:
        return all(w.nonzero for w in self.windows)

    @property
    def consistent(self) -> bool:
        """False when a guaranteed window came out zero or off the predicted degree."""
        if not self.guaranteed:
            return True
        for w in self.windows:
            if not w.nonzero:
                return False
            if w.predicted_degree is not None and w.det_degree != w.predicted_degree:
                return False
        return True


def nonvanishing_report(op, L0: LinearForm, k_max: int, basis: Basis | None = None) -> NonvanishingReport:
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    if L0.is_zero():
        raise ZeroInitialForm("initial linear form is identically zero")
    if basis is None:
        basis = "theta" if isinstance(op, ThetaOperator) else "d"
    m = op.order
    seq = iterates(op, L0, k_max + m, basis)
    if basis == "theta":
        holds = check_T1(op)
    else:
        holds = bool(check_T2(op))
    report = NonvanishingReport(basis, m, holds, holds and m >= 2)
    for k in range(k_max + 1):
        M = FormMatrix(k, tuple(seq[k:k + m]))
        det = det_poly(M)
        predicted = None
        if basis == "theta" and holds and not seq[k].is_zero():
            predicted = predict_degree(op, seq[k])
        report.windows.append(Window(k, M.degree_grid(), det, det.deg, predicted, not det.is_zero()))
    return report
