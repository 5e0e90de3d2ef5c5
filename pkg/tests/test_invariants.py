import pytest

from linpres.families import split_monomial_family, sequence_matrix, xyz_ring
from linpres.groebner import IdealHandle, ideal_equal
from linpres.invariants import (
    HypothesisError,
    Instance,
    birationality_and_inverse,
    chaos_invariant,
    depth_zero_square_check,
    fiber_type_check,
    jacobian_dual,
    linear_syzygy_matrix,
    local_profile,
    power_generator_counts,
    reduction_number_report,
    scroll_check,
)
from linpres.matforms import LinearMatrix

R = xyz_ring()


def inst(letters, seed=0):
    return Instance(sequence_matrix(letters), seed)


def test_chaos_xy():
    c = inst("xy").chaos
    assert c.heights == {1: 3, 2: 2} and c.u == 1
    assert sorted(p.point for p in c.local) == [(0, 1, 0), (1, 0, 0)]
    assert all(p.complete_intersection for p in c.local)


def test_chaos_xxyy():
    c = inst("xxyy").chaos
    assert c.heights == {1: 3, 2: 3, 3: 2, 4: 2} and c.u == 2
    assert [p.mu for p in c.local] == [3, 3]


def test_chaos_universal_prime():
    c = inst("xyy").chaos
    assert c.universal_prime == (1, 0, 0) and c.universal_range == (2, 2)
    assert c.single_prime_verified == {2: True}


def test_chaos_rejects_small_content():
    # every entry lies in (y, z), so the content ideal has height 2
    phi = LinearMatrix.from_strings(R, [["z", "0"], ["-y", "z"], ["0", "-y"]])
    with pytest.raises(HypothesisError) as exc:
        chaos_invariant(phi)
    assert exc.value.which == "I_1"


def test_local_profile_by_forms():
    x, y, z = R.gens()
    lp = local_profile(inst("xyy"), [y, z])
    assert (lp.u_p, lp.mu, lp.complete_intersection) == (1, 3, False)
    with pytest.raises(ValueError):
        local_profile(inst("xyy"), (1, 1, 1))


def test_jacobian_dual_xyy():
    jd = inst("xyy").jacobian
    assert jd.canonical_u == 1
    assert jd.B.to_strings() == [["t0", "0", "0"], ["0", "-t2", "-t3"], ["t1", "-t0", "t2"]]
    assert jd.b_prime.to_strings() == [["-t2", "-t3"], ["-t0", "t2"]]


def test_jacobian_dual_without_canonical_form():
    jd = jacobian_dual(sequence_matrix("xyy"), canonicalize=False)
    assert jd.canonical_u is None and jd.b_prime is None
    assert jd.B.to_strings() == [["-t1", "0", "0"], ["0", "-t2", "-t3"], ["t0", "t1", "t2"]]


def test_symmetric_ideal_xy():
    i = inst("xy")
    assert [str(g) for g in i.symmetric.generators] == ["z*t0 - x*t1", "z*t1 - y*t2"]


def test_rees_and_fiber_one_x_four():
    i = inst("xyy")
    J = i.joint_ring
    # kernel of k[x,y,z,t] -> R[s], t_i -> f_i s, computed independently with sympy
    oracle = IdealHandle(J, [J(s) for s in ("t1*x - t0*z", "t2^2*x - t0*t3*z", "t2*y - t1*z",
                                            "t3*y - t2*z", "t1*t3 - t2^2")])
    assert ideal_equal(i.rees, oracle)
    T = i.t_ring
    assert ideal_equal(i.fiber, IdealHandle(T, [T("t1*t3 - t2^2")]))
    assert fiber_type_check(i).fiber_type


def test_rees_methods_agree():
    i = inst("xxy")
    from linpres.invariants import rees_ideal

    assert ideal_equal(rees_ideal(i, method="auto"), rees_ideal(i, method="elimination"))


def test_birationality_xy():
    b = birationality_and_inverse(inst("xy"))
    assert b.rank_mod_fiber == 2 and b.verified
    assert [str(g) for g in b.inverse_quadrics] == ["t0*t2", "t1^2", "t1*t2"]
    assert str(b.common_factor) == "y*z^2"


@pytest.mark.parametrize("letters", ["xyy", "xyyy"])
def test_birationality_one_x(letters):
    b = birationality_and_inverse(inst(letters))
    assert b.rank_mod_fiber == 2 and b.verified
    # inverse quadrics composed with the forms have degree 2(n-1)
    assert b.common_factor.total_degree() == 2 * len(letters) - 1


def test_depth_zero_square():
    d = depth_zero_square_check(inst("xyy"))
    assert d.depth_zero and str(d.witness) == "y^2*z^3"
    x, y, z = R.gens()
    assert not depth_zero_square_check(IdealHandle(R, [x, y]))


def test_reduction_report_xy():
    rep = reduction_number_report(inst("xy"))
    assert rep.analytic_spread == 3 and rep.reduction_number == 0
    assert all(hf == hp for _, hf, hp in rep.hf_vs_hp)


def test_reduction_report_xxyy():
    rep = reduction_number_report(inst("xxyy"))
    assert rep.h_polynomial == [1, 2, 1] and rep.reduction_number == 2
    assert rep.fiber_cm.is_cm and rep.multiplicity == 4
    assert all(hf == hp for _, hf, hp in rep.hf_vs_hp)


def test_reduction_report_non_cm():
    rep = reduction_number_report(inst("xyxxyy"))
    assert not rep.fiber_cm.is_cm and rep.reduction_number is None
    assert rep.h_polynomial == [1, 4, 3, -1]
    # h-degree 3: the function and polynomial differ at t = 0
    assert [hf == hp for _, hf, hp in rep.hf_vs_hp] == [False, True, True, True, True, True]


def test_linear_syzygies():
    s = linear_syzygy_matrix([R(g) for g in ("x*y", "y*z", "z^2")])
    assert s.ok and s.phi.to_strings() == [["-z", "0"], ["x", "-z"], ["0", "y"]]
    cube = IdealHandle(R, [R("x"), R("y")]).power(3)
    assert linear_syzygy_matrix(cube.generators).nullity == 3
    s = linear_syzygy_matrix([R(g) for g in ("x^2", "y^2", "z^2")])
    assert not s.ok and s.nullity == 0
    s = linear_syzygy_matrix([R(g) for g in ("x^2", "x*y")])
    assert not s.ok and "regenerate" in s.reason
    with pytest.raises(ValueError):
        linear_syzygy_matrix([R("x^2"), R("y")])


def test_split_family_members_have_linear_presentations():
    for r in (1, 2, 3):
        s = linear_syzygy_matrix(split_monomial_family(4, r))
        assert s.ok
        assert Instance(s.phi).chaos.u == 1


def test_scroll_one_x():
    sc = scroll_check(inst("xyyy"))
    assert sc.one_generic.one_generic and sc.codim == sc.expected_codim == 2


def test_power_counts_xy():
    rows = power_generator_counts(inst("xy"), 3)
    assert [(r["mu_power"], r["fiber_hf"], r["ambient"]) for r in rows] == [(3, 3, 6), (6, 6, 15), (10, 10, 28)]
