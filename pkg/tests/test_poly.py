import pytest
from hypothesis import given, strategies as st

from linpres.groebner import _Encoder
from linpres.poly import (
    DEGREVLEX,
    LEX,
    FieldSpec,
    MonomialOrder,
    PolyParseError,
    RingMismatchError,
    binary_form_gcd,
    divide_exact,
    linear_coeff_matrix,
    matrix_rank,
    polyring,
    random_linear_forms,
    ring_map_apply,
)

from strategies import exps, polys

R3 = polyring("x y z")


def test_parse_linear_form():
    f = R3("x + 2*y - z")
    assert linear_coeff_matrix([f]) == [[1, 2, -1]]


def test_parse_zero_is_empty():
    assert R3("0").terms == {}
    assert not R3("0")


def test_parse_expansion():
    assert R3("(x+y)^2 - x^2 - 2*x*y") == R3("y^2")


def test_parse_rationals_and_unary_minus():
    f = R3("-(3/2)*x**2*y + -z")
    assert str(f) == "-3/2*x^2*y - z"


@pytest.mark.parametrize("text", ["x+*y", "x^", "(x+y", "2**", "x y"])
def test_parse_malformed(text):
    with pytest.raises(PolyParseError):
        R3(text)


def test_parse_unknown_variable():
    with pytest.raises(PolyParseError, match="w"):
        R3("x + w")


def test_parse_reports_position():
    with pytest.raises(PolyParseError) as info:
        R3("x+*y")
    assert info.value.position == 2


def test_parse_noninvertible_in_prime_field():
    F = polyring("x y", field=FieldSpec.prime(32003))
    with pytest.raises(PolyParseError):
        F("1/32003*x")
    assert F("1/2*x") * F("2") == F("x")


def test_cross_ring_is_an_error():
    S = polyring("a b")
    with pytest.raises(RingMismatchError):
        R3("x") + S("a")


def test_ring_map_swap():
    x, y, z = R3.gens()
    assert ring_map_apply(x * y, [y, x, z]) == x * y


def test_ring_map_translate():
    x, y, z = R3.gens()
    assert ring_map_apply(x ** 2, [x + z, y, z]) == R3("x^2 + 2*x*z + z^2")


def test_ring_map_toric_relation():
    T = polyring("t1 t2 t3 t4")
    x, y, z = R3.gens()
    f = T("t1*t4 - t3^2")
    assert not ring_map_apply(f, [y ** 2 * z, x * y ** 2, y * z ** 2, z ** 3])


def test_ring_map_count_mismatch():
    with pytest.raises(ValueError):
        ring_map_apply(R3("x"), [R3("x")])


AB = polyring("a b c")


@pytest.mark.parametrize("forms, expected", [
    (["a^2", "a*b"], "a"),
    (["a^2 - b^2", "a^2 + a*b"], "a + b"),
    (["a", "b"], "1"),
    (["a^3*b - a*b^3", "a^2*b^2 - b^4"], "a^2*b - b^3"),
])
def test_binary_form_gcd(forms, expected):
    assert binary_form_gcd([AB(f) for f in forms]) == AB(expected)


def test_binary_form_gcd_rejects_bad_input():
    with pytest.raises(ValueError):
        binary_form_gcd([AB("a + 1")])
    with pytest.raises(ValueError):
        binary_form_gcd([AB("a*b*c")])


@pytest.mark.parametrize("forms, rank", [
    (["x+y", "y+z"], 2), (["x", "2*x"], 1), (["x", "y", "z", "x+y+z"], 3)])
def test_linear_coeff_rank(forms, rank):
    assert matrix_rank(linear_coeff_matrix([R3(f) for f in forms])) == rank


def test_linear_coeff_rejects_nonlinear():
    with pytest.raises(ValueError):
        linear_coeff_matrix([R3("x*y")])


def test_random_linear_forms_deterministic():
    assert random_linear_forms(R3, 1, seed=1) == random_linear_forms(R3, 1, seed=1)
    assert random_linear_forms(R3, 0, seed=1) == []
    T = polyring("t1 t2 t3 t4 t5")
    forms = random_linear_forms(T, 3, seed=7)
    assert matrix_rank(linear_coeff_matrix(forms)) == 3


def test_divide_exact():
    assert divide_exact(R3("x^2 - y^2"), R3("x - y")) == R3("x + y")
    with pytest.raises(ValueError):
        divide_exact(R3("x^2 + y"), R3("x"))


# properties ---------------------------------------------------------------

@given(polys(R3), polys(R3), polys(R3))
def test_distributivity(f, g, h):
    assert (f + g) * h == f * h + g * h


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_degree_additive(d1, d2, data):
    f = data.draw(polys(R3, homogeneous_degree=d1))
    g = data.draw(polys(R3, homogeneous_degree=d2))
    if f and g:
        assert (f * g).is_homogeneous()
        assert (f * g).total_degree() == d1 + d2


@given(polys(R3, max_terms=6))
def test_print_parse_roundtrip(f):
    assert R3(str(f)) == f
    assert str(R3(str(f))) == str(f)


@given(polys(polyring("a b"), homogeneous_degree=3), polys(polyring("a b"), homogeneous_degree=2))
def test_gcd_divides_inputs(f, g):
    if not (f or g):
        return
    d = binary_form_gcd([f, g])
    for h in (f, g):
        if h:
            divide_exact(h, d)


@given(st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=1, max_size=4),
       st.lists(st.integers(-2, 2), min_size=16, max_size=16))
def test_rank_invariant_under_row_recombination(rows, mix):
    forms = [R3.zero() + sum((g.scale(c) for g, c in zip(R3.gens(), r) if c), R3.zero()) for r in rows]
    k = len(forms)
    A = [[mix[4 * i + j] for j in range(k)] for i in range(k)]
    if matrix_rank(A) < k:
        return
    mixed = [sum((forms[j].scale(A[i][j]) for j in range(k) if A[i][j]), R3.zero()) for i in range(k)]
    assert matrix_rank(linear_coeff_matrix(forms)) == matrix_rank(linear_coeff_matrix(mixed))


ORDERS = [DEGREVLEX, LEX, MonomialOrder("block", 2), MonomialOrder("block", 1)]


@pytest.mark.parametrize("order", ORDERS, ids=lambda o: f"{o.kind}{o.block_split}")
@given(a=exps(4, 6), b=exps(4, 6), w=st.tuples(*[st.integers(1, 3)] * 4))
def test_packed_key_matches_sort_key(order, a, b, w):
    R = polyring("p q r s", order=order, weights=w)
    enc = _Encoder(R)
    ka, kb = enc.key(enc.encode(a)), enc.key(enc.encode(b))
    sa, sb = R.sort_key(a), R.sort_key(b)
    assert (ka < kb) == (sa < sb)
    assert (ka == kb) == (a == b)
    # keys are additive and invertible
    ab = tuple(i + j for i, j in zip(a, b))
    assert enc.key(enc.encode(ab)) == ka + kb
    assert enc.decode(enc.unkey(ka)) == a
