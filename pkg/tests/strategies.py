"""Hypothesis strategies for sparse Laurent polynomials."""
from hypothesis import strategies as st

from laurentkit.core import LaurentPoly, VarSpace

SPACE = VarSpace.of(["x", "y", "z"], ["a"])
EXCHANGE = ("x", "y", "z")

coefficients = st.integers(-20, 20).filter(bool)


@st.composite
def monomials(draw, low=-3, high=3, avoid=None):
    exps = {v: draw(st.integers(low, high)) for v in EXCHANGE if v != avoid}
    exps["a"] = draw(st.integers(0, 2))
    return exps


@st.composite
def laurent_polys(draw, max_terms=5, low=-3, high=3, avoid=None, nonzero=False):
    items = draw(st.lists(st.tuples(monomials(low, high, avoid), coefficients), min_size=1 if nonzero else 0, max_size=max_terms))
    p = LaurentPoly.from_terms(SPACE, items)
    if nonzero and p.is_zero():
        p = LaurentPoly.from_terms(SPACE, items[:1])
    return p


def polynomials(max_terms=5, high=3, avoid=None, nonzero=False):
    return laurent_polys(max_terms, 0, high, avoid, nonzero)


points = st.fixed_dictionaries(
    {v: st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool) for v in ("x", "y", "z", "a")}
)
