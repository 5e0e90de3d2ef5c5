"""Instance parsing and the analysis pipeline behind the command line."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field

from .families import arrangement_family, fat_point_ideal, monomial_family, monomial_local_orders
from .groebner import IdealHandle, ideal_contains, ideal_equal
from .hilbert import dimension_and_height, hilbert_series
from .invariants import (
    HypothesisError,
    Instance,
    birationality_and_inverse,
    depth_zero_square_check,
    extend_to_joint,
    fiber_type_check,
    linear_syzygy_matrix,
    minors_codim,
    power_generator_counts,
    reduction_number_report,
    scroll_check,
)
from .matforms import LinearMatrix, ShapeError, all_minors, minors_ideal
from .poly import QQ, FieldSpec, PolyParseError, PolyRing

ALL_TASKS = ("chaos", "jacobian", "fiber", "rees", "fiber_type", "birationality", "depth", "reduction", "scroll")


class SchemaError(ValueError):
    pass


@dataclass
class InstanceSpec:
    field: FieldSpec
    variables: tuple
    kind: str
    payload: dict
    tasks: tuple = ALL_TASKS
    seed: int = 0
    raw: dict = field(default_factory=dict)

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.variables, field=self.field)


def parse_instance(data: dict) -> InstanceSpec:
    if not isinstance(data, dict):
        raise SchemaError("instance must be a JSON object")
    ring = data.get("ring", {"field": "rational"})
    fld = ring.get("field", "rational")
    if fld == "rational":
        F = QQ
    elif isinstance(fld, dict) and set(fld) == {"prime"}:
        try:
            F = FieldSpec.prime(int(fld["prime"]))
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bad prime field: {exc}") from None
    else:
        raise SchemaError(f"unknown field {fld!r}")
    variables = tuple(ring.get("variables", ["x", "y", "z"]))
    if len(variables) != 3:
        raise SchemaError("the ring must have three variables")
    inp = data.get("input")
    if not isinstance(inp, dict) or "kind" not in inp:
        raise SchemaError("missing input.kind")
    kind = inp["kind"]
    need = {"matrix": "rows", "sequence": "letters", "arrangement": "forms", "fat_points": "points",
            "generators": "polys"}
    if kind not in need:
        raise SchemaError(f"unknown input kind {kind!r}")
    if need[kind] not in inp:
        raise SchemaError(f"input of kind {kind!r} needs the field {need[kind]!r}")
    extra = set(inp) - {"kind", need[kind]}
    if extra:
        raise SchemaError(f"unexpected input fields {sorted(extra)}")
    tasks = data.get("tasks", ["all"])
    if tasks == ["all"] or tasks == "all":
        tasks = ALL_TASKS
    unknown = set(tasks) - set(ALL_TASKS)
    if unknown:
        raise SchemaError(f"unknown tasks {sorted(unknown)}")
    seed = data.get("seed", 0)
    if not isinstance(seed, int):
        raise SchemaError("seed must be an integer")
    return InstanceSpec(F, variables, kind, inp, tuple(t for t in ALL_TASKS if t in tasks), seed, data)


def build_matrix(spec: InstanceSpec) -> tuple[LinearMatrix, dict]:
    """The presentation matrix of the instance, plus input-specific extras."""
    R = spec.ring
    p = spec.payload
    extras: dict = {}
    try:
        if spec.kind == "matrix":
            return LinearMatrix.from_strings(R, p["rows"]), extras
        if spec.kind == "sequence":
            phi, gens = monomial_family(p["letters"], R)
            extras["local_orders"] = {"(1:0:0)": monomial_local_orders(gens, 0),
                                      "(0:1:0)": monomial_local_orders(gens, 1)}
            return phi, extras
        if spec.kind == "arrangement":
            data = arrangement_family([R(f) for f in p["forms"]])
            extras["arrangement"] = data.as_dict()
            return data.phi, extras
        if spec.kind == "fat_points":
            pts = [([R(f) for f in item["prime"]], item["mult"]) for item in p["points"]]
            res = fat_point_ideal(R, pts)
            extras["fat_points"] = res.as_dict()
            if res.phi is None:
                raise HypothesisError("fat point ideal is not linearly presented: " + "; ".join(res.notes),
                                      "linear_presentation")
            return res.phi, extras
        if spec.kind == "generators":
            gens = [R(f) for f in p["polys"]]
            res = linear_syzygy_matrix(gens)
            extras["syzygies"] = {"nullity": res.nullity, "reason": res.reason}
            if res.phi is None:
                raise HypothesisError(f"generators are not linearly presented ({res.reason})", "linear_presentation")
            return res.phi, extras
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed input: {exc}") from None
    except ShapeError as exc:
        raise SchemaError(str(exc)) from None
    raise SchemaError(f"unknown input kind {spec.kind!r}")


# checks -----------------------------------------------------------------------------

def _check(name, status, reason="", **cert):
    return {"name": name, "status": status, "reason": reason, "certificate": cert}


def _gb_hash(I: IdealHandle) -> str:
    text = ";".join(str(g) for g in I.gb())
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _strs(I: IdealHandle) -> list:
    return [str(g) for g in I.gb()]


def analyze(spec: InstanceSpec, timing: bool = False) -> dict:
    """Run the requested tasks; raises ``HypothesisError`` for bad heights."""
    clock = time.perf_counter()
    phi, extras = build_matrix(spec)
    inst = Instance(phi, spec.seed)
    tasks = set(spec.tasks)
    rep: dict = {"input": spec.raw, "n": inst.n, "phi": phi.to_strings(),
                 "generators": [str(g) for g in inst.generators]}
    rep.update(extras)
    checks: list = []

    prof = inst.chaos  # raises HypothesisError when the heights are wrong
    checks.append(_check("height_hypotheses", "pass", heights=prof.as_dict()["heights"]))
    rep["heights"] = prof.as_dict()["heights"]
    rep["u"] = prof.u
    rep["local"] = [p.as_dict() for p in prof.local]
    if "chaos" in tasks:
        rep["chaos"] = prof.as_dict()
        for t, ok in sorted(prof.single_prime_verified.items()):
            checks.append(_check(f"single_minimal_prime_I{t}", "pass" if ok else "fail",
                                 point=[str(v) for v in prof.universal_prime]))

    u = prof.u
    if "chaos" in tasks and spec.kind == "sequence":
        letters = spec.payload["letters"]
        once = [c for c in "xy" if letters.count(c) == 1]
        if u == 1 and once:
            # the letter used once singles out the non-CI point: (y,z) for x, (x,z) for y
            key = "(1:0:0)" if once[0] == "x" else "(0:1:0)"
            orders = rep["local_orders"][key]
            ok = set(orders) <= {inst.n - 2, inst.n - 1}
            checks.append(_check("u1_local_orders_at_q", "pass" if ok else "fail", point=key, orders=orders))

    fp = extras.get("fat_points")
    if fp and fp["subhomaloidal_s"] is not None:
        ok = fp["system_dim"] == fp["expected_system_dim"]
        checks.append(_check("subhomaloidal_expected_dimension", "pass" if ok else "fail",
                             s=fp["subhomaloidal_s"], dim=fp["system_dim"]))

    if "jacobian" in tasks or "scroll" in tasks:
        jd = inst.jacobian
        rep["B"] = inst.B.to_strings()
        rep["jacobian_dual"] = jd.as_dict()
        if jd.provenance is None:
            checks.append(_check("canonical_form", "skip",
                                 "canonical form unavailable over Q: no rational minimal prime of I_{u+1}"))
    if "scroll" in tasks:
        sc = scroll_check(inst)
        rep["scroll"] = sc.as_dict()
        if sc.one_generic is None:
            checks.append(_check("b_prime_one_generic", "skip", "no distinguished block"))
        else:
            checks.append(_check("b_prime_one_generic", "pass" if sc.one_generic else "fail",
                                 sc.one_generic.reason, gcd=str(sc.one_generic.gcd)))
            checks.append(_check("scroll_codimension", "pass" if sc.codim == sc.expected_codim else "fail",
                                 codim=sc.codim, expected=sc.expected_codim))
        if u == 1:
            c = minors_codim(inst.B, 2)
            checks.append(_check("codim_I2_B", "pass" if c == inst.n - 1 else "fail", codim=c, expected=inst.n - 1))

    if tasks & {"fiber", "fiber_type", "birationality", "reduction"}:
        hs = hilbert_series(inst.fiber)
        rep["fiber"] = {"generators": _strs(inst.fiber), "gb_hash": _gb_hash(inst.fiber), "hilbert": hs.as_dict()}
        checks.append(_check("analytic_spread_3", "pass" if hs.dim == 3 else "fail", dim=hs.dim))

    if tasks & {"rees", "fiber_type"}:
        rees = inst.rees
        dim = dimension_and_height(rees)[0]
        rep["rees"] = {"generators": _strs(rees), "gb_hash": _gb_hash(rees), "dim": dim}
        checks.append(_check("rees_dimension_4", "pass" if dim == 4 else "fail", dim=dim))
        if inst.n >= 4:
            cram = IdealHandle(inst.t_ring, all_minors(inst.B, 3))
            ok = ideal_contains(rees, extend_to_joint(cram, inst.joint_ring))
            checks.append(_check("I3_B_in_rees", "pass" if ok else "fail"))

    if "fiber_type" in tasks:
        ft = fiber_type_check(inst)
        rep["fiber_type"] = ft.as_dict()
        if u == 1:
            checks.append(_check("u1_fiber_type", "pass" if ft else "fail", missing=ft.as_dict()["missing"]))
            ci = inst.canonical_instance
            jd = inst.jacobian
            if ci is not None and jd.b_prime is not None and jd.b_prime.ncols >= 2:
                q2 = minors_ideal(jd.b_prime, 2)
                a = ideal_equal(ci.fiber, IdealHandle(ci.t_ring, q2.generators))
                b = ideal_equal(ci.rees, ci.symmetric + extend_to_joint(q2, ci.joint_ring))
                checks.append(_check("u1_fiber_is_I2_bprime", "pass" if a else "fail"))
                checks.append(_check("u1_rees_is_sym_plus_I2_bprime", "pass" if b else "fail"))

    if "birationality" in tasks:
        bd = birationality_and_inverse(inst)
        rep["birationality"] = bd.as_dict()
        ok = bd.rank_mod_fiber == 2 and bd.verified
        checks.append(_check("birational_quadric_inverse", "pass" if ok else "fail",
                             rank=bd.rank_mod_fiber, common_factor=rep["birationality"]["common_factor"]))

    if "depth" in tasks:
        dz = depth_zero_square_check(inst)
        rep["depth_zero_square"] = dz.as_dict()
        checks.append(_check("depth_zero_square", "pass" if dz else "fail", witness=rep["depth_zero_square"]["witness"]))

    if "reduction" in tasks:
        rr = reduction_number_report(inst)
        rep["reduction"] = rr.as_dict()
        if u == 1:
            ok = rr.fiber_cm.is_cm and rr.reduction_number is not None and rr.reduction_number <= 1
            checks.append(_check("u1_cm_fiber_reduction_at_most_1", "pass" if ok else "fail",
                                 verdict=rr.fiber_cm.verdict, r=rr.reduction_number))
        if rr.fiber_cm.is_cm:
            # agreement from degree 0 on; see the notes on degree >= 1 in the README
            agree = all(hf == hp for _, hf, hp in rr.hf_vs_hp)
            want = rr.reduction_number is not None and rr.reduction_number <= 2
            checks.append(_check("hf_equals_hp_iff_r_at_most_2", "pass" if agree == want else "fail",
                                 agree=agree, r=rr.reduction_number))

    if "reduction" in tasks and inst.n <= 6:
        rows = power_generator_counts(inst, 3 if inst.n <= 5 else 2)
        rep["power_generators"] = rows
        ok = all(r["mu_power"] == r["fiber_hf"] for r in rows)
        checks.append(_check("mu_powers_match_fiber_hf", "pass" if ok else "fail"))

    rep["checks"] = checks
    rep["summary"] = {s: sum(1 for c in checks if c["status"] == s) for s in ("pass", "fail", "skip")}
    if timing:
        rep["timing_seconds"] = round(time.perf_counter() - clock, 3)
    return rep


def dumps(rep: dict) -> str:
    return json.dumps(rep, indent=2, ensure_ascii=False) + "\n"


def text_summary(rep: dict) -> str:
    lines = [f"n = {rep['n']}, u = {rep['u']}, heights = {rep['heights']}"]
    if "fiber" in rep:
        h = rep["fiber"]["hilbert"]
        lines.append(f"fiber: {len(rep['fiber']['generators'])} GB elements, dim {h['dim']}, "
                     f"h = {h['h_polynomial']}, e = {h['multiplicity']}")
    if "reduction" in rep:
        r = rep["reduction"]
        lines.append(f"fiber {r['fiber_cm']['verdict']}, reduction number {r['reduction_number']}")
    for c in rep["checks"]:
        tail = f" ({c['reason']})" if c["reason"] else ""
        lines.append(f"  [{c['status']}] {c['name']}{tail}")
    s = rep["summary"]
    lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['skip']} skipped")
    return "\n".join(lines) + "\n"


__all__ = ["ALL_TASKS", "InstanceSpec", "SchemaError", "PolyParseError", "parse_instance", "build_matrix",
           "analyze", "dumps", "text_summary"]
