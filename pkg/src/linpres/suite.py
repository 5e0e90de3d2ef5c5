"""The fixture corpus behind ``verify-suite`` and the acceptance tests."""

from __future__ import annotations

from dataclasses import dataclass, field

from .families import (
    arrangement_family,
    monomial_local_mu,
    sequences_with,
    xyz_ring,
)
from .groebner import IdealHandle, ideal_equal
from .hilbert import artinian_cm_test
from .invariants import Instance, linear_syzygy_matrix
from .matforms import minors_ideal, structured_matrix
from .points import rational_points
from .poly import ring_map_apply
from .report import analyze, parse_instance

ARRANGEMENTS = {
    "arr_xy_x+y_z": ["x", "y", "x+y", "z"],
    "arr_pencil4_plus_x": ["x", "y", "y+z", "y-z", "y+2*z"],
    "arr_generic5": ["x", "y", "z", "x+y+z", "x+2*y+3*z"],
    "arr_generic4": ["x", "y", "z", "x+y+z"],
    "arr_two_triples": ["x", "y", "x+y", "z", "x+z"],
}


@dataclass
class Fixture:
    name: str
    data: dict
    n: int
    tags: set = field(default_factory=set)


def _seq_fixture(letters: str) -> Fixture:
    tags = set()
    n = len(letters) + 1
    if letters.count("x") == 1:
        tags.add("one_x")
    if n >= 5 and all(letters[i] != letters[i + 1] for i in range(len(letters) - 1)):
        tags.add("alternating")
    r = len(letters) - len(letters.lstrip("x"))
    if letters == "x" * r + "y" * (len(letters) - r) and (r, len(letters) - r) in {(2, 2), (3, 2), (3, 3)}:
        tags.add("separating")
    if letters == "xyxxyy":
        tags.add("non_cm")
    data = {"ring": {"field": "rational"}, "input": {"kind": "sequence", "letters": letters}, "tasks": ["all"],
            "seed": 0}
    return Fixture(f"seq_{letters}", data, n, tags)


def _arr_fixture(name: str, forms: list) -> Fixture:
    data = {"ring": {"field": "rational"}, "input": {"kind": "arrangement", "forms": forms}, "tasks": ["all"],
            "seed": 0}
    return Fixture(name, data, len(forms), {"arrangement"})


def fixture_corpus(level: str = "fast") -> list[Fixture]:
    top = 5 if level == "fast" else 7
    out = []
    for n in range(3, top + 1):
        out.extend(_seq_fixture(w) for w in sequences_with(n))
    if level == "fast":
        # the named theorem instances stay in the fast tier
        for w in ("xyxyx", "xyxyxy", "xxxyy", "xxxyyy"):
            out.append(_seq_fixture(w))
    out.extend(_arr_fixture(k, v) for k, v in ARRANGEMENTS.items())
    return out


def alternate_signs(I: IdealHandle) -> IdealHandle:
    """Image of I under t_i -> (-1)^i t_i (variables named t<i>)."""
    R = I.ring
    imgs = []
    for name, g in zip(R.variables, R.gens()):
        if name.startswith("t") and name[1:].isdigit() and int(name[1:]) % 2:
            imgs.append(-g)
        else:
            imgs.append(g)
    return IdealHandle(R, [ring_map_apply(f, imgs) for f in I.generators])


def separating_checks(inst: Instance, r: int) -> list:
    n = inst.n
    T, J = inst.t_ring, inst.joint_ring
    H1 = structured_matrix("hankel", T, start=0, stop=r)
    H2 = structured_matrix("hankel", T, start=r, stop=n - 1)
    x, y, z = J.gens()[:3]
    S1 = structured_matrix("scroll_block", J, start=0, stop=r, column=(x, -z))
    S2 = structured_matrix("scroll_block", J, start=r, stop=n - 1, column=(y, -z))
    fib = ideal_equal(inst.fiber, minors_ideal(H1, 2) + minors_ideal(H2, 2))
    rees = ideal_equal(inst.rees, alternate_signs(minors_ideal(S1, 2) + minors_ideal(S2, 2)))
    cm = artinian_cm_test(inst.fiber, seed=inst.seed).is_cm
    return [("separating_fiber_is_hankel_minors", fib), ("separating_rees_is_scroll_minors", rees),
            ("separating_fiber_cm", cm)]


def alternating_checks(inst: Instance) -> list:
    n = inst.n
    T = inst.t_ring
    C = structured_matrix("catalecticant2step", T, n=n)
    fib = ideal_equal(inst.fiber, minors_ideal(C, 2))
    I2B = minors_ideal(inst.B, 2)
    ts = T.gens()
    mem = [ts[0] * ts[n - 1]] + [ts[i] ** 2 for i in range(1, n - 1)]
    return [("alternating_fiber_is_catalecticant", fib),
            ("alternating_squares_in_I2_B", all(I2B.contains(f) for f in mem))]


def non_cm_checks(inst: Instance) -> list:
    v = [artinian_cm_test(inst.fiber, seed=s).verdict for s in (0, 1)]
    pts = rational_points(inst.minors(4))
    return [("non_cm_fiber_two_seeds", v == ["not_cm", "not_cm"]), ("non_cm_I4_two_rational_primes", len(pts) >= 2)]


def monomial_local_checks(inst: Instance) -> list:
    out = []
    for keep, pt in ((0, (1, 0, 0)), (1, (0, 1, 0))):
        oracle = monomial_local_mu(inst.generators, keep)
        from .matforms import rank_at_point

        out.append(("local_mu_matches_monomial_oracle", oracle == inst.n - rank_at_point(inst.phi, pt)))
    return out


def arrangement_checks(forms: list) -> list:
    R = xyz_ring()
    data = arrangement_family([R(f) for f in forms])
    inst = Instance(data.phi)
    syz = linear_syzygy_matrix(data.generators)
    m1 = max(m for _, _, m in data.points)
    u_ok = syz.ok and Instance(syz.phi).chaos.u == inst.n - m1 - 1
    return [("arrangement_fat_identity", data.fat_identity), ("fat_point_chaos_formula", u_ok)]


def run_fixture(fx: Fixture) -> list:
    """(check name, passed) pairs for one fixture."""
    spec = parse_instance(fx.data)
    rep = analyze(spec)
    results = [(c["name"], c["status"] == "pass") for c in rep["checks"] if c["status"] != "skip"]
    phi = _phi_of(spec)
    inst = Instance(phi, spec.seed)
    if "arrangement" in fx.tags:
        results += arrangement_checks(fx.data["input"]["forms"])
    else:
        results += monomial_local_checks(inst)
    if "alternating" in fx.tags:
        results += alternating_checks(inst)
    if "separating" in fx.tags:
        letters = fx.data["input"]["letters"]
        results += separating_checks(inst, letters.count("x"))
    if "non_cm" in fx.tags:
        results += non_cm_checks(inst)
    return results


def _phi_of(spec):
    from .report import build_matrix

    return build_matrix(spec)[0]
