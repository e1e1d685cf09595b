from hypothesis import strategies as st

from theta_forge.ratpoly import Poly

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def polys(draw, max_deg=5):
    n = draw(st.integers(0, max_deg + 1))
    return Poly(draw(st.lists(rationals, min_size=n, max_size=n)))


@st.composite
def nonzero_polys(draw, max_deg=5):
    p = draw(polys(max_deg))
    if p.is_zero():
        p = Poly((draw(rationals.filter(bool)),))
    return p

