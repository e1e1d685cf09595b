import random
from fractions import Fraction
from math import factorial, prod

import pytest

from theta_forge.diffop import TruncatedSeries, apply_theta
from theta_forge.errors import InvalidParameters, ZeroDenominator
from theta_forge.hyper import (
    FactorialBase,
    PFQParams,
    annihilation_check,
    factorial_series,
    first_failing_order,
    kummer_type_operator,
    pfq_operator,
    pfq_series,
    pochhammer,
)
from theta_forge.opparse import parse_op, parse_poly
from theta_forge.randgen import rand_factorial_base, rand_pfq
from theta_forge.siegel import check_T1


def fb(text):
    return FactorialBase(parse_poly(text))


def pfq_oracle(a, b, n):
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    num = prod(prod(ai + j for j in range(n)) for ai in a) if a else 1
    den = factorial(n) * (prod(prod(bj + j for j in range(n)) for bj in b) if b else 1)
    return Fraction(num) / den


def test_kummer_examples():
    assert kummer_type_operator(fb("(t+1)^2")) == parse_op("T^2 - t")
    assert kummer_type_operator(fb("(t+1)*(t+2)")) == parse_op("T^2 + T - t")
    assert kummer_type_operator(fb("(t+1)^3")) == parse_op("T^3 - t")


def test_factorial_base_guards():
    with pytest.raises(InvalidParameters):
        fb("(t+2)^2")
    with pytest.raises(InvalidParameters):
        fb("t+1")
    with pytest.raises(InvalidParameters):
        fb("(t+1)*(t-3)")


def test_factorial_series_examples():
    assert factorial_series(fb("(t+1)^2"), 4).coeffs == (1, 1, Fraction(1, 4), Fraction(1, 36))
    assert factorial_series(fb("(t+1)^3"), 1).coeffs == (1,)
    assert factorial_series(fb("(t+1)*(t+2)"), 3).coeffs == (1, Fraction(1, 2), Fraction(1, 12))


def test_factorial_series_zero_denominator():
    class Loose:
        P = parse_poly("(t+1)*(t-1)")

    with pytest.raises(ZeroDenominator):
        factorial_series(Loose, 4)


def test_pfq_operator_examples():
    assert pfq_operator(PFQParams([], [1])) == parse_op("T^2 - t")
    assert pfq_operator(PFQParams([], [2])) == parse_op("T^2 + T - t")
    assert pfq_operator(PFQParams([1], [1, 1])) == parse_op("T^3 - t*T - t")


def test_pfq_series_examples():
    assert pfq_series(PFQParams([], [1]), 3).coeffs == (1, 1, Fraction(1, 4))
    assert pfq_series(PFQParams([], []), 3).coeffs == (1, 1, Fraction(1, 2))
    s = pfq_series(PFQParams([2], [1, 1]), 3)
    assert s.coeffs == tuple(pfq_oracle([2], [1, 1], n) for n in range(3))
    assert s.coeffs == (1, 2, Fraction(3, 4))


def test_pfq_params_guards():
    with pytest.raises(InvalidParameters):
        PFQParams([1, 2], [3])
    with pytest.raises(InvalidParameters):
        PFQParams([], [-2])
    assert PFQParams([Fraction(3, 2)], [Fraction(1, 2), 1]).integer_differences() == [
        (Fraction(3, 2), Fraction(1, 2))
    ]


def test_annihilation_examples():
    assert annihilation_check(parse_op("T^2 - t"), factorial_series(fb("(t+1)^2"), 21))
    exp = TruncatedSeries([Fraction(1, factorial(n)) for n in range(10)])
    assert not annihilation_check(parse_op("T^2 - t"), exp)
    assert first_failing_order(parse_op("T^2 - t"), exp) == 2
    assert annihilation_check(parse_op("T"), TruncatedSeries([1]))


def test_random_factorial_family():
    rng = random.Random(31)
    for _ in range(30):
        base = rand_factorial_base(rng)
        op = kummer_type_operator(base)
        assert check_T1(op)
        assert annihilation_check(op, factorial_series(base, 20))


def test_random_pfq_family():
    rng = random.Random(37)
    for _ in range(30):
        params = rand_pfq(rng)
        s = pfq_series(params, 20)
        assert s.coeffs == tuple(pfq_oracle(params.a, params.b, n) for n in range(20))
        assert apply_theta(pfq_operator(params), s).is_zero()
        assert check_T1(pfq_operator(params)) == (params.p == 0)


def test_pfq_matches_factorial_family():
    assert pfq_series(PFQParams([], [1]), 15) == factorial_series(fb("(t+1)^2"), 15)


def test_pochhammer():
    assert pochhammer(Fraction(2), 3) == 24
    assert pochhammer(Fraction(1, 2), 0) == 1
