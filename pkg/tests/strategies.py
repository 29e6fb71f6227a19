"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from fatpoints import CyclotomicField, Poly, monomials_of_degree

Q3 = CyclotomicField(3)

coeffs = st.tuples(st.integers(-9, 9), st.integers(-9, 9)).map(lambda t: Q3(list(t)))


@st.composite
def forms(draw, nvars=3, degree=None, max_terms=6):
    """A homogeneous polynomial over Q(zeta_3)."""
    d = draw(st.integers(0, 4)) if degree is None else degree
    monos = monomials_of_degree(nvars, d)
    chosen = draw(st.lists(st.sampled_from(monos), max_size=max_terms, unique=True))
    return Poly(Q3, nvars, {m: draw(coeffs) for m in chosen})


@st.composite
def polys(draw, nvars=3, max_degree=3, max_terms=4):
    """An arbitrary (not necessarily homogeneous) small polynomial."""
    exps = st.tuples(*[st.integers(0, max_degree)] * nvars)
    chosen = draw(st.lists(exps, max_size=max_terms, unique=True))
    return Poly(Q3, nvars, {m: draw(coeffs) for m in chosen})


points = st.lists(coeffs, min_size=3, max_size=3)
