"""Invariants of linearly presented height-2 perfect ideals in k[x,y,z]."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .groebner import (
    IdealHandle,
    eliminate,
    ideal_contains,
    ideal_equal,
    normal_form,
    saturate,
    saturate_ideal,
)
from .hilbert import CMVerdict, artinian_cm_test, dimension_and_height, hilbert_series
from .matforms import (
    CanonicalForm,
    CanonicalFormUnavailable,
    LinearMatrix,
    OneGenericResult,
    all_minors,
    canonicalize_chaos_form,
    hilbert_burch_generators,
    minors_ideal,
    one_generic_test,
    prime_of_point,
    rank_at_point,
)
from .points import rational_points
from .poly import Poly, PolyRing, nullspace, ring_map_apply


class HypothesisError(ValueError):
    """A standing height hypothesis fails for the input matrix."""

    def __init__(self, message: str, which: str = ""):
        super().__init__(message)
        self.which = which


def t_names(n: int, prefix: str = "t") -> list[str]:
    return [f"{prefix}{i}" for i in range(n)]


# the instance object ---------------------------------------------------------

class Instance:
    """A presentation matrix phi together with lazily computed invariants.

    Every expensive object (minor ideals, fiber, Rees ideal) is computed
    once; the individual functions below accept either an ``Instance`` or
    a bare ``LinearMatrix``.
    """

    def __init__(self, phi: LinearMatrix, seed: int = 0):
        if phi.ring.nvars != 3:
            raise ValueError("phi must live over a polynomial ring in three variables")
        n, m = phi.shape
        if n != m + 1 or n < 3:
            raise ValueError(f"expected an n x (n-1) matrix with n >= 3, got {n}x{m}")
        self.phi = phi
        self.n = n
        self.seed = seed
        self._minors: dict = {}

    @property
    def ring(self) -> PolyRing:
        return self.phi.ring

    def minors(self, t: int) -> IdealHandle:
        if t not in self._minors:
            self._minors[t] = minors_ideal(self.phi, t)
        return self._minors[t]

    @cached_property
    def generators(self) -> list[Poly]:
        return hilbert_burch_generators(self.phi)

    @cached_property
    def ideal(self) -> IdealHandle:
        return IdealHandle(self.ring, self.generators)

    @cached_property
    def t_ring(self) -> PolyRing:
        return PolyRing(tuple(t_names(self.n)), field=self.ring.field)

    @cached_property
    def joint_ring(self) -> PolyRing:
        return PolyRing(self.ring.variables + tuple(t_names(self.n)), field=self.ring.field)

    @cached_property
    def chaos(self) -> "ChaosProfile":
        return chaos_invariant(self)

    @cached_property
    def canonical(self) -> CanonicalForm | None:
        try:
            return canonical_form(self)
        except CanonicalFormUnavailable:
            return None

    @cached_property
    def jacobian(self) -> "JacobianDual":
        return jacobian_dual(self)

    @cached_property
    def B(self) -> LinearMatrix:
        """Jacobian dual of phi itself (no canonicalization)."""
        return jacobian_matrix(self.phi, self.t_ring)

    @cached_property
    def canonical_instance(self) -> "Instance | None":
        cf = self.canonical
        return None if cf is None else Instance(cf.phi, self.seed)

    @cached_property
    def symmetric(self) -> IdealHandle:
        return symmetric_ideal(self.phi, self.joint_ring)

    @cached_property
    def fiber(self) -> IdealHandle:
        return fiber_ideal(self)

    @cached_property
    def rees(self) -> IdealHandle:
        return rees_ideal(self)


def _as_instance(obj) -> Instance:
    return obj if isinstance(obj, Instance) else Instance(obj)


# chaos invariant ----------------------------------------------------------------

@dataclass
class LocalProfile:
    point: tuple
    prime: list
    u_p: int
    mu: int
    complete_intersection: bool

    def as_dict(self) -> dict:
        return {
            "point": [str(v) for v in self.point],
            "prime": [str(f) for f in self.prime],
            "u_p": self.u_p,
            "mu": self.mu,
            "complete_intersection": self.complete_intersection,
        }


@dataclass
class ChaosProfile:
    heights: dict
    u: int
    local: list = field(default_factory=list)
    universal_prime: tuple | None = None
    universal_range: tuple | None = None
    single_prime_verified: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "heights": {str(t): h for t, h in sorted(self.heights.items())},
            "u": self.u,
            "local": [p.as_dict() for p in self.local],
            "universal_prime": None if self.universal_prime is None else [str(v) for v in self.universal_prime],
            "universal_range": None if self.universal_range is None else list(self.universal_range),
            "single_prime_verified": {str(t): v for t, v in sorted(self.single_prime_verified.items())},
        }


def height_table(obj) -> dict:
    inst = _as_instance(obj)
    return {t: dimension_and_height(inst.minors(t))[1] for t in range(1, inst.n)}


def _only_point(I: IdealHandle, pt: tuple) -> bool:
    """V(I) ⊂ P^2 is the single point ``pt`` (over the algebraic closure)."""
    if any(g.evaluate(pt) for g in I.generators):
        return False
    q = IdealHandle(I.ring, prime_of_point(I.ring, pt))
    rest = saturate_ideal(I, q)
    return dimension_and_height(rest)[0] <= 0


def chaos_invariant(obj) -> ChaosProfile:
    inst = _as_instance(obj)
    n = inst.n
    heights = height_table(inst)
    if heights[1] != 3:
        raise HypothesisError(f"height of I_1(phi) is {heights[1]}, expected 3", "I_1")
    if heights[n - 1] != 2:
        raise HypothesisError(f"height of I_{n - 1}(phi) is {heights[n - 1]}, expected 2", f"I_{n - 1}")
    u = max(t for t, h in heights.items() if h == 3)
    if any(heights[t] != 3 for t in range(1, u + 1)) or any(heights[t] != 2 for t in range(u + 1, n)):
        raise AssertionError(f"height table is not of threshold shape: {heights}")
    local = []
    for pt in rational_points(inst.minors(u + 1)):
        local.append(local_profile(inst, pt))
    prof = ChaosProfile(heights, u, local)
    if local and min(p.u_p for p in local) != u:
        raise AssertionError("local ranks disagree with the height threshold")
    if n >= 2 * (u + 1):
        lo, hi = u + 1, n - (u + 1)
        common = None
        for t in range(lo, hi + 1):
            pts = set(rational_points(inst.minors(t)))
            common = pts if common is None else common & pts
        if common and len(common) == 1:
            (q,) = common
            prof.universal_prime = q
            prof.universal_range = (lo, hi)
            for t in range(lo, hi + 1):
                prof.single_prime_verified[t] = _only_point(inst.minors(t), q)
    return prof


def local_profile(obj, prime) -> LocalProfile:
    """Local data at a rational point, given as a point or two linear forms."""
    from .matforms import normalize_point, point_of_prime

    inst = _as_instance(obj)
    if prime and isinstance(prime[0], Poly):
        pt = point_of_prime(prime)
    else:
        pt = normalize_point([inst.ring.field(v) for v in prime])
    if any(f.evaluate(pt) for f in inst.generators):
        raise ValueError("the prime does not contain I")
    r = rank_at_point(inst.phi, pt)
    # cross-check: I_{r+1} vanishes at the point and I_r does not
    assert all(not g.evaluate(pt) for g in inst.minors(r + 1).generators) if r + 1 < inst.n else True
    mu = inst.n - r
    return LocalProfile(tuple(pt), prime_of_point(inst.ring, pt), r, mu, mu == 2)


# Jacobian dual ----------------------------------------------------------------------

@dataclass
class JacobianDual:
    B: LinearMatrix
    canonical_u: int | None
    b_prime: LinearMatrix | None
    provenance: CanonicalForm | None

    def as_dict(self) -> dict:
        return {
            "B": self.B.to_strings(),
            "canonical_u": self.canonical_u,
            "b_prime": None if self.b_prime is None else self.b_prime.to_strings(),
            "action": None if self.provenance is None else self.provenance.action.as_dict(),
            "point": None if self.provenance is None else [str(v) for v in self.provenance.point],
        }


def jacobian_matrix(phi: LinearMatrix, t_ring: PolyRing) -> LinearMatrix:
    """B with (t)·phi = (x y z)·B."""
    n, m = phi.shape
    ts = t_ring.gens()
    rows = []
    for v in range(3):
        A = phi.coefficient_matrix(v)
        row = []
        for j in range(m):
            acc = t_ring.zero()
            for i in range(n):
                if A[i][j]:
                    acc = acc + ts[i].scale(A[i][j])
            row.append(acc)
        rows.append(tuple(row))
    B = LinearMatrix(t_ring, tuple(rows))
    _check_duality(phi, B)
    return B


def _check_duality(phi: LinearMatrix, B: LinearMatrix):
    n, m = phi.shape
    J = PolyRing(phi.ring.variables + B.ring.variables, field=phi.ring.field)
    xs = J.gens()[:3]
    ts = J.gens()[3:]
    for j in range(m):
        lhs = J.zero()
        for i in range(n):
            lhs = lhs + ts[i] * ring_map_apply(phi.rows[i][j], xs)
        rhs = J.zero()
        for v in range(3):
            rhs = rhs + xs[v] * ring_map_apply(B.rows[v][j], ts)
        if lhs != rhs:
            raise AssertionError("Jacobian duality identity failed")


def canonical_form(obj) -> CanonicalForm:
    """Canonicalize at the first rational minimal prime of I_{u+1}."""
    inst = _as_instance(obj)
    prof = inst.chaos
    if not prof.local:
        raise CanonicalFormUnavailable("no rational minimal prime of I_{u+1} over the rationals")
    pt = prof.universal_prime or prof.local[0].point
    return canonicalize_chaos_form(inst.phi, pt, prof.u)


def jacobian_dual(obj, canonicalize: bool = True) -> JacobianDual:
    inst = _as_instance(obj)
    cf = inst.canonical if canonicalize else None
    if cf is None:
        return JacobianDual(jacobian_matrix(inst.phi, inst.t_ring), None, None, None)
    B = jacobian_matrix(cf.phi, inst.t_ring)
    u = cf.u
    bp = None
    if u < inst.n - 1:
        bp = B.submatrix([1, 2], list(range(u, inst.n - 1)))
    # shape check: the x-row is (t_0 .. t_{u-1}, 0 .. 0)
    ts = inst.t_ring.gens()
    for j in range(inst.n - 1):
        want = ts[j] if j < u else inst.t_ring.zero()
        if B.rows[0][j] != want:
            raise AssertionError("canonical Jacobian dual has the wrong first row")
    return JacobianDual(B, u, bp, cf)


# Rees algebra and fiber ---------------------------------------------------------------

def symmetric_ideal(phi: LinearMatrix, joint: PolyRing | None = None) -> IdealHandle:
    n, m = phi.shape
    if joint is None:
        joint = PolyRing(phi.ring.variables + tuple(t_names(n)), field=phi.ring.field)
    xs = joint.gens()[:3]
    ts = joint.gens()[3:]
    gens = []
    for j in range(m):
        g = joint.zero()
        for i in range(n):
            if phi.rows[i][j]:
                g = g + ts[i] * ring_map_apply(phi.rows[i][j], xs)
        gens.append(g)
    return IdealHandle(joint, gens)


def _nonzero_minors(inst: Instance) -> list[Poly]:
    return [f for f in inst.generators if f]


def rees_ideal(obj, which: int = 0, method: str = "auto") -> IdealHandle:
    """Symmetric ideal saturated at one nonzero maximal minor."""
    inst = _as_instance(obj)
    mins = _nonzero_minors(inst)
    if not mins:
        raise ValueError("all maximal minors vanish")
    delta = _lift(mins[which], inst.joint_ring)
    S = inst.symmetric if isinstance(obj, Instance) else symmetric_ideal(inst.phi, inst.joint_ring)
    J = saturate(S, delta, method=method)
    return IdealHandle(inst.joint_ring, J.gb())


def _lift(f: Poly, joint: PolyRing) -> Poly:
    return ring_map_apply(f, joint.gens()[:3])


def fiber_ideal(obj) -> IdealHandle:
    """Kernel of k[t] -> k[f_0..f_{n-1}], by elimination with weighted t's."""
    inst = _as_instance(obj)
    n = inst.n
    d = n - 1
    names = inst.ring.variables + tuple(t_names(n))
    W = PolyRing(names, field=inst.ring.field, weights=(1, 1, 1) + (d,) * n)
    xs = W.gens()[:3]
    ts = W.gens()[3:]
    gens = [ts[i] - ring_map_apply(f, xs) for i, f in enumerate(inst.generators)]
    Q = eliminate(IdealHandle(W, gens), inst.ring.variables, target=inst.t_ring)
    return IdealHandle(inst.t_ring, Q.gb())


def extend_to_joint(I: IdealHandle, joint: PolyRing) -> IdealHandle:
    idx = [joint.index[v] for v in I.ring.variables]
    imgs = [joint.gens()[k] for k in idx]
    return IdealHandle(joint, [ring_map_apply(g, imgs) for g in I.generators])


@dataclass
class FiberTypeResult:
    fiber_type: bool
    missing: list

    def __bool__(self):
        return self.fiber_type

    def as_dict(self) -> dict:
        return {"fiber_type": self.fiber_type, "missing": [str(f) for f in self.missing]}


def fiber_type_check(obj) -> FiberTypeResult:
    inst = _as_instance(obj)
    cand = inst.symmetric + extend_to_joint(inst.fiber, inst.joint_ring)
    missing = [g for g in inst.rees.generators if normal_form(g, cand)]
    # the candidate always sits inside the Rees ideal
    assert ideal_contains(inst.rees, cand)
    return FiberTypeResult(not missing, missing)


# birationality ------------------------------------------------------------------------

@dataclass
class BirationalityData:
    rank_mod_fiber: int
    slice_columns: tuple | None = None
    inverse_quadrics: list | None = None
    common_factor: Poly | None = None
    verified: bool = False

    def as_dict(self) -> dict:
        return {
            "rank_mod_fiber": self.rank_mod_fiber,
            "slice_columns": None if self.slice_columns is None else list(self.slice_columns),
            "inverse_quadrics": None if self.inverse_quadrics is None else [str(g) for g in self.inverse_quadrics],
            "common_factor": None if self.common_factor is None else str(self.common_factor),
            "common_factor_degree": None if self.common_factor is None else self.common_factor.total_degree(),
            "verified": self.verified,
        }


def rank_modulo(B: LinearMatrix, Q: IdealHandle) -> int:
    """Largest r with some r-minor of B outside Q."""
    best = 0
    for r in range(1, min(B.shape) + 1):
        if any(normal_form(f, Q) for f in all_minors(B, r)):
            best = r
        else:
            break
    return best


def birationality_and_inverse(obj) -> BirationalityData:
    inst = _as_instance(obj)
    B = inst.B
    Q = inst.fiber
    r = rank_modulo(B, Q)
    data = BirationalityData(r)
    if r < 2:
        return data
    xs = inst.ring.gens()
    fs = inst.generators
    for a, b in combinations(range(B.ncols), 2):
        col = lambda j: [B.rows[v][j] for v in range(3)]
        p, q = col(a), col(b)
        g = [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]]
        if not any(normal_form(h, Q) for h in g):
            continue
        ev = [ring_map_apply(h, fs) for h in g]
        k = next(i for i in range(3) if ev[i])
        from .poly import divide_exact

        c = divide_exact(ev[k], xs[k])
        ok = all(ev[i] == c * xs[i] for i in range(3))
        data.slice_columns = (a, b)
        data.inverse_quadrics = g
        data.common_factor = c
        data.verified = ok
        return data
    raise AssertionError("no 2x3 slice of rank 2 modulo the fiber ideal")


# squares and depth -----------------------------------------------------------------------

@dataclass
class DepthZeroResult:
    depth_zero: bool
    witness: Poly | None

    def __bool__(self):
        return self.depth_zero

    def as_dict(self) -> dict:
        return {"depth_zero": self.depth_zero, "witness": None if self.witness is None else str(self.witness)}


def depth_zero_square_check(obj) -> DepthZeroResult:
    """(I^2 : m^∞) != I^2, with a witness from the saturation."""
    I = obj.ideal if isinstance(obj, Instance) else obj
    sq = I.power(2)
    m = IdealHandle(I.ring, I.ring.gens())
    sat = saturate_ideal(sq, m)
    for g in sorted(sat.gb(), key=lambda f: f.ring.sort_key(f.lead_exp())):
        if normal_form(g, sq):
            return DepthZeroResult(True, g.primitive())
    return DepthZeroResult(False, None)


# reduction number ------------------------------------------------------------------------

@dataclass
class ReductionReport:
    analytic_spread: int
    fiber_cm: CMVerdict
    h_polynomial: list
    h_degree: int
    reduction_number: int | None
    multiplicity: int
    hf_vs_hp: list

    def as_dict(self) -> dict:
        return {
            "analytic_spread": self.analytic_spread,
            "fiber_cm": self.fiber_cm.as_dict(),
            "h_polynomial": self.h_polynomial,
            "h_degree": self.h_degree,
            "reduction_number": self.reduction_number,
            "multiplicity": self.multiplicity,
            "hf_vs_hp": self.hf_vs_hp,
        }


def reduction_number_report(obj, seed: int | None = None) -> ReductionReport:
    Q = obj.fiber if isinstance(obj, Instance) else obj
    if seed is None:
        seed = obj.seed if isinstance(obj, Instance) else 0
    hs = hilbert_series(Q)
    cm = artinian_cm_test(Q, seed=seed)
    table = [[t, hs.hilbert_function(t), hs.hilbert_polynomial(t)] for t in range(0, 6)]
    red = hs.h_degree if cm.is_cm else None
    return ReductionReport(hs.dim, cm, hs.h_polynomial, hs.h_degree, red, hs.multiplicity, table)


# linear syzygies ---------------------------------------------------------------------------

@dataclass
class SyzygyResult:
    phi: LinearMatrix | None
    nullity: int
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.phi is not None


def linear_syzygy_matrix(gens) -> SyzygyResult:
    """Linear syzygies of equigenerated forms, assembled into phi when
    there are exactly n-1 of them and their maximal minors regenerate
    the ideal."""
    gens = [g for g in gens]
    if not gens:
        raise ValueError("no generators")
    ring = gens[0].ring
    F = ring.field
    degs = {g.total_degree() for g in gens if g}
    if len(degs) != 1 or any(not g.is_homogeneous() for g in gens):
        raise ValueError("generators must be homogeneous of one degree")
    n, N = len(gens), ring.nvars
    xs = ring.gens()
    unknowns = [(i, v) for i in range(n) for v in range(N)]
    prods = [xs[v] * gens[i] for i, v in unknowns]
    monos = sorted({e for p in prods for e in p.terms}, key=ring.sort_key, reverse=True)
    rowidx = {e: k for k, e in enumerate(monos)}
    A = [[F.zero] * len(unknowns) for _ in monos]
    for c, p in enumerate(prods):
        for e, a in p.terms.items():
            A[rowidx[e]][c] = a
    ker = nullspace(A, len(unknowns), F)
    if len(ker) != n - 1:
        return SyzygyResult(None, len(ker), f"nullity {len(ker)} differs from n-1 = {n - 1}")
    cols = []
    for vec in ker:
        col = []
        for i in range(n):
            f = ring.zero()
            for v in range(N):
                a = vec[i * N + v]
                if a:
                    f = f + xs[v].scale(a)
            col.append(f)
        cols.append(col)
    phi = LinearMatrix(ring, tuple(tuple(cols[j][i] for j in range(n - 1)) for i in range(n)))
    if not ideal_equal(minors_ideal(phi, n - 1), IdealHandle(ring, gens)):
        return SyzygyResult(None, len(ker), "maximal minors do not regenerate the ideal")
    return SyzygyResult(phi, len(ker))


# scroll and Jacobian-dual checks ---------------------------------------------------------

@dataclass
class ScrollCheck:
    one_generic: OneGenericResult | None
    codim: int | None
    expected_codim: int | None

    def as_dict(self) -> dict:
        return {
            "one_generic": None if self.one_generic is None else self.one_generic.as_dict(),
            "codim": self.codim,
            "expected_codim": self.expected_codim,
        }


def scroll_check(obj) -> ScrollCheck:
    """1-genericity and codimension of the 2-minors of the distinguished block."""
    inst = _as_instance(obj)
    jd = inst.jacobian
    if jd.b_prime is None:
        return ScrollCheck(None, None, None)
    bp = jd.b_prime
    og = one_generic_test(bp)
    if bp.ncols >= 2:
        codim = dimension_and_height(minors_ideal(bp, 2))[1]
    else:
        codim = 0
    return ScrollCheck(og, codim, inst.n - jd.canonical_u - 2)


def minors_codim(M: LinearMatrix, t: int) -> int:
    return dimension_and_height(minors_ideal(M, t))[1]


def power_generator_counts(obj, upto: int = 3) -> list:
    """mu(I^t) as dim_k (I^t)_{t(n-1)}, next to the fiber's Hilbert function
    and the ambient dimension dim_k R_{t(n-1)}."""
    from math import comb

    from .hilbert import graded_piece_dimension

    inst = _as_instance(obj)
    hs = hilbert_series(inst.fiber)
    d = inst.n - 1
    rows = []
    for t in range(1, upto + 1):
        rows.append({
            "t": t,
            "mu_power": graded_piece_dimension(inst.ideal.power(t), t * d),
            "fiber_hf": hs.hilbert_function(t),
            "ambient": comb(t * d + 2, 2),
        })
    return rows
