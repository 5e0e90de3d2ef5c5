import pytest
import sympy
from hypothesis import given, strategies as st

from linpres.groebner import (
    IdealHandle,
    eliminate,
    groebner_basis,
    ideal,
    ideal_contains,
    ideal_equal,
    ideal_quotient,
    intersect,
    is_groebner,
    minimal_generators,
    normal_form,
    saturate,
    saturate_ideal,
)
from linpres.hilbert import dimension_and_height
from linpres.poly import LEX, RingMismatchError, polyring

from strategies import polys

R = polyring("x y z")


def gens_str(I):
    return sorted(str(g) for g in I.gb())


def test_already_reduced():
    assert [str(g) for g in ideal(R, ["x^2", "x*y"]).gb()] == ["x*y", "x^2"]


def test_lex_linear_elimination():
    L = polyring("x y z", order=LEX)
    gb = groebner_basis([L("x - y"), L("y - z")])
    assert sorted(map(str, gb)) == ["x - z", "y - z"]


def test_nonhomogeneous_principal():
    S = polyring("x y")
    assert [str(g) for g in ideal(S, ["x*y - 1"]).gb()] == ["x*y - 1"]


def test_zero_ideal_has_empty_basis():
    assert IdealHandle(R, []).gb() == []


def test_normal_form_examples():
    I = ideal(R, ["x*y", "y*z"])
    assert not normal_form(R("x*y"), I)
    assert normal_form(R.one(), I) == R.one()
    T = polyring("t1 t2 t3 t4")
    toric = ideal(T, ["t3^2 - t1*t4"])
    assert not normal_form(T("t3^2 - t1*t4"), toric)


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        normal_form(polyring("a b")("a"), ideal(R, ["x"]))
    with pytest.raises(RingMismatchError):
        ideal_equal(ideal(R, ["x"]), ideal(polyring("a b c"), ["a"]))


def test_ideal_equal_examples():
    assert ideal_equal(ideal(R, ["x", "y"]), ideal(R, ["x+y", "y"]))
    assert not ideal_equal(ideal(R, ["x^2"]), ideal(R, ["x"]))


def test_eliminate_cusp():
    S = polyring("t x y")
    J = eliminate(ideal(S, ["x - t^2", "y - t^3"]), ["t"])
    assert J.ring.variables == ("x", "y")
    assert gens_str(J) == ["x^3 - y^2"]


def test_eliminate_nothing():
    I = ideal(R, ["x + y"])
    assert eliminate(I, []) is I


def test_eliminate_toric():
    S = polyring("x y z t1 t2 t3 t4")
    I = ideal(S, ["t1 - y^2*z", "t2 - x*y^2", "t3 - y*z^2", "t4 - z^3"])
    assert gens_str(eliminate(I, ["x", "y", "z"])) == ["t3^2 - t1*t4"]


@pytest.mark.parametrize("method", ["auto", "bayer", "quotient", "elimination"])
def test_saturation_examples(method):
    assert gens_str(saturate(ideal(R, ["x^2*y"]), R("y"), method)) == ["x^2"]
    # z^2 lies in the ideal, so the saturation at z is the unit ideal
    assert gens_str(saturate(ideal(R, ["x*y", "y*z", "z^2"]), R("z"), method)) == ["1"]
    I = ideal(R, ["x*y", "z^3"])
    assert saturate(I, R.one(), method) is I


def test_saturation_at_x():
    assert gens_str(saturate(ideal(R, ["x*y", "y*z", "z^2"]), R("x"))) == ["y", "z^2"]


def test_saturation_by_zero():
    with pytest.raises(ZeroDivisionError):
        saturate(ideal(R, ["x"]), R.zero())


def test_quotient_examples():
    assert gens_str(ideal_quotient(ideal(R, ["x^2"]), R("x"))) == ["x"]
    assert gens_str(ideal_quotient(ideal(R, ["x*y", "z"]), R("x"))) == ["y", "z"]
    assert gens_str(ideal_quotient(ideal(R, ["x"]), R("y"))) == ["x"]
    with pytest.raises(ZeroDivisionError):
        ideal_quotient(ideal(R, ["x"]), R.zero())


def test_intersection_examples():
    assert gens_str(intersect(ideal(R, ["x"]), ideal(R, ["y"]))) == ["x*y"]
    I = ideal(R, ["x*y", "z^2"])
    assert ideal_equal(intersect(I, I), I)


def test_fat_point_intersection_is_reciprocal_ideal():
    parts = [ideal(R, ["x", "y"]).power(2), ideal(R, ["x", "z"]), ideal(R, ["y", "z"]), ideal(R, ["x+y", "z"])]
    K = parts[0]
    for P in parts[1:]:
        K = intersect(K, P)
    # products of three of the four lines x, y, x+y, z (sympy expansion)
    products = ["x*y*z + y^2*z", "x^2*z + x*y*z", "x*y*z", "x^2*y + x*y^2"]
    assert ideal_equal(K, ideal(R, products))


def test_saturate_by_maximal_ideal():
    I = ideal(R, ["x^2", "x*y", "x*z"])
    assert gens_str(saturate_ideal(I, ideal(R, ["x", "y", "z"]))) == ["x"]


@pytest.mark.parametrize("gens, expected", [
    (["x", "y", "z"], (0, 3)),
    (["x*y", "y*z", "z^2"], (1, 2)),
    ([], (3, 0)),
    (["1"], (-1, 3)),
])
def test_dimension_and_height(gens, expected):
    assert dimension_and_height(ideal(R, gens)) == expected


def test_minimal_generators():
    I = ideal(R, ["x*y", "x*y + y*z", "x^2*y", "z^3", "y*z*x"])
    assert sorted(map(str, minimal_generators(I))) == ["x*y", "y*z", "z^3"]


# independent oracle: sympy's Groebner bases ---------------------------------

def _sympy_reduced(gens, names, order):
    syms = sympy.symbols(names)
    exprs = [sympy.sympify(str(g).replace("^", "**")) for g in gens]
    G = sympy.groebner(exprs, *syms, order=order)
    out = []
    for e in G.exprs:
        p = sympy.Poly(e, *syms)
        lc = p.LC(order=order)
        out.append(sympy.expand(e / lc))
    return sorted(str(sympy.expand(e)) for e in out)


def _ours_as_sympy(gb):
    return sorted(str(sympy.expand(sympy.sympify(str(g.monic()).replace("^", "**")))) for g in gb)


S3 = polyring("a b c")
L3 = polyring("a b c", order=LEX)


@given(st.lists(polys(S3, max_terms=3, max_deg=2), min_size=1, max_size=3))
def test_grevlex_matches_sympy(gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    assert _ours_as_sympy(groebner_basis(gens)) == _sympy_reduced(gens, "a b c", "grevlex")


@given(st.lists(polys(L3, max_terms=3, max_deg=2), min_size=1, max_size=2))
def test_lex_matches_sympy(gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    assert _ours_as_sympy(groebner_basis(gens)) == _sympy_reduced(gens, "a b c", "lex")


# properties --------------------------------------------------------------------

@given(st.lists(polys(S3, max_terms=3, max_deg=3), min_size=1, max_size=3))
def test_buchberger_certificate(gens):
    assert is_groebner(groebner_basis([g for g in gens if g] or [S3.one()]))


@given(st.lists(polys(S3, max_terms=3, max_deg=2), min_size=1, max_size=3), st.sampled_from(["a", "b", "a + c"]))
def test_saturation_idempotent_and_methods_agree(gens, f):
    I = IdealHandle(S3, gens)
    f = S3(f)
    A = saturate(I, f, "quotient")
    B = saturate(I, f, "elimination")
    assert ideal_equal(A, B)
    assert ideal_equal(saturate(A, f), A)
    assert ideal_equal(ideal_quotient(A, f), A)


@given(st.lists(polys(S3, max_terms=3, max_deg=2, homogeneous_degree=2), min_size=1, max_size=3),
       st.sampled_from(["a", "c", "a + b"]))
def test_bayer_agrees_with_elimination(gens, f):
    I = IdealHandle(S3, gens)
    assert ideal_equal(saturate(I, S3(f), "bayer"), saturate(I, S3(f), "elimination"))


@given(st.lists(polys(S3, max_terms=3, max_deg=2), min_size=1, max_size=2),
       st.lists(polys(S3, max_terms=3, max_deg=2), min_size=1, max_size=2))
def test_intersection_contained_in_both(g1, g2):
    I, J = IdealHandle(S3, g1), IdealHandle(S3, g2)
    K = intersect(I, J)
    assert ideal_contains(I, K) and ideal_contains(J, K)


@given(st.lists(polys(S3, max_terms=3, max_deg=2), min_size=1, max_size=3))
def test_dimension_order_independent(gens):
    I = IdealHandle(S3, gens)
    J = IdealHandle(L3, [g.to_ring(L3) for g in gens])
    assert dimension_and_height(I) == dimension_and_height(J)
