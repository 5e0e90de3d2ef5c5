import random

import pytest
from hypothesis import given, settings, strategies as st

from linpres.families import sequence_matrix
from linpres.invariants import height_table
from linpres.matforms import (
    CanonicalFormUnavailable,
    ConjugationAction,
    LinearMatrix,
    ShapeError,
    all_minors,
    canonicalize_chaos_form,
    conjugate,
    hilbert_burch_generators,
    is_canonical_block,
    one_generic_test,
    point_of_prime,
    rank_at_point,
    structured_matrix,
)
from linpres.poly import QQ, matrix_rank, polyring

R = polyring("x y z")


def mat(rows, ring=R):
    return LinearMatrix.from_strings(ring, rows)


def test_two_by_two_minors():
    M = mat([["x", "y", "z"], ["y", "z", "x"]])
    got = all_minors(M, 2)
    assert got == [R(f) for f in ("x*z - y^2", "x^2 - y*z", "x*y - z^2")]


def test_shape_errors():
    with pytest.raises(ShapeError):
        mat([["x", "y"], ["z"]])
    with pytest.raises(ShapeError):
        hilbert_burch_generators(mat([["x", "y"]]))


def test_hilbert_burch_xy():
    phi = sequence_matrix("xy")
    assert [str(g) for g in hilbert_burch_generators(phi)] == ["x*y", "y*z", "z^2"]


def test_hilbert_burch_xyy():
    phi = sequence_matrix("xyy")
    assert [str(g) for g in hilbert_burch_generators(phi)] == ["-x*y^2", "-y^2*z", "-y*z^2", "-z^3"]


def test_hilbert_burch_degenerate():
    # repeated rows kill every maximal minor except the two that delete one of them
    phi = mat([["x", "y"], ["x", "y"], ["z", "x"]])
    gens = hilbert_burch_generators(phi)
    assert gens[2] == R.zero()
    assert gens[0] == -gens[1]


def test_identity_action():
    phi = sequence_matrix("xyxy")
    assert conjugate(phi, ConjugationAction.identity(3, 5, 4)) == phi


def test_swap_x_and_y():
    swap = ConjugationAction(((0, 1, 0), (1, 0, 0), (0, 0, 1)), ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
                             ((1, 0), (0, 1)))
    assert conjugate(sequence_matrix("xy"), swap) == sequence_matrix("yx")


def test_singular_action_rejected():
    bad = ConjugationAction(((1, 1, 0), (1, 1, 0), (0, 0, 1)), ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
                            ((1, 0), (0, 1)))
    with pytest.raises(ValueError):
        conjugate(sequence_matrix("xy"), bad)


def test_rank_at_points():
    phi = sequence_matrix("xyy")
    assert rank_at_point(phi, (1, 0, 0)) == 1
    assert rank_at_point(phi, (0, 1, 0)) == 2
    assert rank_at_point(phi, (1, 1, 1)) == 3
    with pytest.raises(ValueError):
        rank_at_point(phi, (0, 0, 0))


def test_point_of_prime():
    x, y, z = R.gens()
    assert point_of_prime([y, z]) == (1, 0, 0)
    assert point_of_prime([x - z, y + z]) == (1, -1, 1)


def test_hankel_is_one_generic():
    T = polyring("t0 t1 t2 t3")
    H = structured_matrix("hankel", T, start=0, stop=3)
    assert H.to_strings() == [["t0", "t1", "t2"], ["t1", "t2", "t3"]]
    assert one_generic_test(H).one_generic


def test_diagonal_is_not_one_generic():
    T = polyring("t1 t2")
    res = one_generic_test(mat([["t1", "0"], ["0", "t2"]], T))
    assert not res
    assert res.row_witness == (1, 0) and res.col_witness == (0, 1)
    assert str(res.gcd) == "a1*a2"


def test_irrational_generalized_zero():
    # a generalized zero exists only over Q(i)
    T = polyring("t1 t2")
    res = one_generic_test(mat([["t1", "t2"], ["-t2", "t1"]], T))
    assert not res.one_generic and res.row_witness is None
    assert res.gcd.total_degree() == 2


def test_one_generic_needs_two_rows():
    with pytest.raises(ShapeError):
        one_generic_test(mat([["x"], ["y"], ["z"]]))


def test_structured_kinds():
    T = polyring("t0 t1 t2 t3 t4")
    C = structured_matrix("catalecticant2step", T, n=5)
    assert C.to_strings() == [["t0", "t1", "t2"], ["t2", "t3", "t4"]]
    x = T.gens()[0]
    S = structured_matrix("scroll_block", T, start=2, stop=4, column=(x, -x))
    assert S.to_strings() == [["t0", "t2", "t3"], ["-t0", "t3", "t4"]]
    with pytest.raises(ShapeError):
        structured_matrix("bogus", T)
    with pytest.raises(ShapeError):
        structured_matrix("hankel", T, start=2, stop=2)


def test_canonicalize_xyy():
    cf = canonicalize_chaos_form(sequence_matrix("xyy"), (1, 0, 0))
    assert cf.u == 1 and is_canonical_block(cf.phi, 1)
    assert cf.phi.to_strings() == [["x", "-z", "0"], ["z", "0", "0"], ["0", "-y", "z"], ["0", "0", "-y"]]


def test_canonicalize_moves_prime():
    x, y, z = R.gens()
    cf = canonicalize_chaos_form(sequence_matrix("xxyy"), [x, z], u=2)
    assert cf.point == (0, 1, 0)
    assert is_canonical_block(cf.phi, 2)
    # the recorded action reproduces the canonical matrix
    assert conjugate(sequence_matrix("xxyy"), cf.action) == cf.phi


def test_canonicalize_rank_mismatch():
    with pytest.raises(CanonicalFormUnavailable):
        canonicalize_chaos_form(sequence_matrix("xyy"), (0, 1, 0), u=1)


def _random_action(rng, n):
    def inv(k):
        while True:
            A = tuple(tuple(rng.randint(-2, 2) for _ in range(k)) for _ in range(k))
            if matrix_rank([list(r) for r in A], QQ) == k:
                return A

    return ConjugationAction(inv(3), inv(n), inv(n - 1))


@settings(max_examples=15)
@given(st.sampled_from(["xy", "xyy", "xxy", "xyx"]), st.integers(0, 10**6))
def test_heights_invariant_under_conjugation(letters, seed):
    phi = sequence_matrix(letters)
    n = phi.nrows
    moved = conjugate(phi, _random_action(random.Random(seed), n))
    assert height_table(moved) == height_table(phi)


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_one_generic_invariant_under_scalar_action(seed):
    rng = random.Random(seed)
    T = polyring("t0 t1 t2 t3")
    H = structured_matrix("hankel", T, start=0, stop=3)
    D = mat([["t0", "0", "t2"], ["0", "t1", "t3"]], T)
    act = _random_action(rng, 4)
    left = act.row_op[:2]
    left = tuple(r[:2] for r in left)
    if matrix_rank([list(r) for r in left], QQ) < 2:
        left = ((1, 0), (0, 1))
    for M in (H, D):
        moved = M.scalar_transform(left, act.col_op)
        assert one_generic_test(moved).one_generic == one_generic_test(M).one_generic
