"""Hypothesis strategies for polynomials."""

from hypothesis import strategies as st

from linpres.poly import Poly


def exps(nvars, max_deg=3):
    return st.tuples(*[st.integers(0, max_deg) for _ in range(nvars)])


def polys(ring, max_terms=4, max_deg=3, bound=5, homogeneous_degree=None):
    n = ring.nvars
    if homogeneous_degree is None:
        e = exps(n, max_deg)
    else:
        d = homogeneous_degree
        e = st.lists(st.integers(0, n - 1), min_size=d, max_size=d).map(
            lambda idx: tuple(idx.count(i) for i in range(n)))
    term = st.tuples(e, st.integers(-bound, bound).filter(bool))
    return st.lists(term, max_size=max_terms).map(lambda ts: Poly.from_terms(ring, ts))
