import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polys
from theta_forge.diffop import (
    DOperator,
    ThetaOperator,
    TruncatedSeries,
    apply_d,
    apply_theta,
    connection_matrix,
    d_to_theta,
    stirling,
    theta_to_d,
)
from theta_forge.errors import TruncationTooShort
from theta_forge.opparse import parse_op
from theta_forge.randgen import rand_operator
from theta_forge.ratpoly import Poly
from theta_forge.siegel import det_leibniz

t = Poly.t()


def falling(j, n):
    out = 1
    for i in range(n):
        out *= j - i
    return out


def test_stirling_values():
    tab = stirling(8)
    # t^2 D^2 t^j = (j^2 - j) t^j  =>  s1(2,.) = (0, -1, 1)
    assert [tab.s1(2, k) for k in range(3)] == [0, -1, 1]
    assert [tab.s1(3, k) for k in (1, 2, 3)] == [2, -3, 1]
    assert [tab.S2(3, k) for k in (1, 2, 3)] == [1, 3, 1]
    assert tab.s1(0, 0) == tab.S2(0, 0) == 1


def test_stirling_recurrences():
    tab = stirling(12)
    for n in range(1, 13):
        assert tab.s1(n, n) == tab.S2(n, n) == 1
        assert tab.s1(n, 0) == tab.S2(n, 0) == 0
    for n in range(11):
        for k in range(1, n + 2):
            assert tab.s1(n + 1, k) == tab.s1(n, k - 1) - n * tab.s1(n, k)
            assert tab.S2(n + 1, k) == tab.S2(n, k - 1) + k * tab.S2(n, k)


def test_monomial_oracle_small():
    tab = stirling(4)
    for n in range(5):
        for j in range(10):
            assert falling(j, n) == sum(tab.s1(n, k) * j**k for k in range(n + 1))
            assert j**n == sum(tab.S2(n, k) * falling(j, k) for k in range(n + 1))


def test_d_to_theta_examples():
    assert d_to_theta(parse_op("t*D")) == parse_op("T")
    assert d_to_theta(parse_op("t^2*D^2")) == parse_op("T^2 - T")
    # Airy: t^2 (D^2 - t) = t^2 D^2 - t^3
    assert d_to_theta(parse_op("D^2 - t")) == parse_op("T^2 - T - t^3")


def test_theta_to_d_examples():
    assert theta_to_d(parse_op("T")) == parse_op("t*D")
    assert theta_to_d(parse_op("T^2")) == parse_op("t^2*D^2 + t*D")
    assert theta_to_d(parse_op("T^2 - t")) == parse_op("t^2*D^2 + t*D - t")


def test_d_to_theta_removes_spare_t_factors():
    assert d_to_theta(parse_op("t^3*D")) == parse_op("T")


def test_connection_matrix():
    assert connection_matrix(2) == [[Poly.const(1), Poly()], [Poly(), t]]
    M3 = connection_matrix(3)
    assert M3[2] == [Poly(), t, t**2]
    assert det_leibniz(M3) == t**3
    for m in range(1, 7):
        M = connection_matrix(m)
        for i in range(m):
            assert M[i][i] == t**i
            assert all(M[i][k].is_zero() for k in range(i + 1, m))
        assert det_leibniz(M) == t ** (m * (m - 1) // 2)


def test_apply_theta_examples():
    f = TruncatedSeries([Fraction(1, factorial(n) ** 2) for n in range(6)])
    assert apply_theta(parse_op("T^2 - t"), f).is_zero()
    assert apply_theta(parse_op("T^2 - t"), f).trunc_order == 5
    assert apply_theta(parse_op("T"), TruncatedSeries([1, 0, 0])).is_zero()
    assert apply_theta(parse_op("T - 3"), TruncatedSeries([0, 0, 0, 1])).is_zero()


def test_apply_d_examples():
    e = TruncatedSeries([Fraction(1, factorial(n)) for n in range(6)])
    out = apply_d(parse_op("D"), e)
    assert out == e.truncate(4)
    airy = TruncatedSeries([1, 0, 0, Fraction(1, 6), 0, 0, Fraction(1, 180)])
    res = apply_d(parse_op("D^2 - t"), airy)
    assert res.trunc_order == 4 and res.is_zero()
    assert apply_d(parse_op("D"), TruncatedSeries([1, 0])).is_zero()
    with pytest.raises(TruncationTooShort):
        apply_d(parse_op("D^3"), TruncatedSeries([1, 1]))


def test_operator_accessors():
    op = parse_op("t*T^2 - 2*T - t^2")
    assert op.N == t and op.P(1) == Poly.const(2) and op.P(2) == t**2
    assert op.S == 1 and op.rhs_degrees() == [0, 2]
    d = parse_op("t*D^2 - 1")
    assert d.T == t and d.Q(2) == Poly.const(1) and d.Q(1).is_zero()
    assert ThetaOperator.from_rhs(t, [2, t**2]) == op


def strip_t(op):
    return op.shift(-op.t_valuation())


def test_roundtrip_random():
    rng = random.Random(11)
    for _ in range(60):
        op = rand_operator(rng, ThetaOperator)
        assert strip_t(d_to_theta(theta_to_d(op))) == strip_t(op)


series = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=5), min_size=8, max_size=8).map(
    TruncatedSeries
)


@st.composite
def theta_ops(draw, cls=ThetaOperator):
    cs = draw(st.lists(polys(3), min_size=1, max_size=4))
    lead = draw(polys(3).filter(bool))
    return cls(cs + [lead])


@given(theta_ops(), series, series)
def test_apply_theta_linear(op, f, g):
    assert apply_theta(op, f + g) == apply_theta(op, f) + apply_theta(op, g)


@given(theta_ops(DOperator), series, series)
def test_apply_d_linear(op, f, g):
    assert apply_d(op, f + g) == apply_d(op, f) + apply_d(op, g)


@settings(max_examples=60)
@given(theta_ops(), series)
def test_apply_d_of_converted_matches(op, f):
    lhs = apply_d(theta_to_d(op), f)
    rhs = apply_theta(op, f).truncate(lhs.trunc_order)
    assert lhs == rhs


def test_shared_table_growth():
    from theta_forge.diffop import shared_stirling

    tab = shared_stirling(40)
    assert tab.max_n >= 40
    assert tab.S2(40, 40) == 1
