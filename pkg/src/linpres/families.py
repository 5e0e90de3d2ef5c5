"""Model classes: monomial entry sequences, line arrangements, fat points."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .groebner import IdealHandle, ideal_equal, intersect, minimal_generators
from .hilbert import _cut_by_linear_forms, graded_piece_dimension, hilbert_series
from .invariants import (
    HypothesisError,
    Instance,
    chaos_invariant,
    linear_syzygy_matrix,
)
from .matforms import LinearMatrix, normalize_point, point_of_prime, prime_of_point
from .poly import QQ, FieldSpec, Poly, PolyRing, linear_coeff_matrix, matrix_rank, polyring, random_linear_forms


def xyz_ring(field: FieldSpec = QQ) -> PolyRing:
    return polyring("x y z", field=field)


# monomial sequences -----------------------------------------------------------------

def check_sequence(letters: str) -> str:
    letters = letters.strip()
    if len(letters) < 2 or set(letters) - {"x", "y"}:
        raise ValueError(f"entry sequence must be a word over {{x, y}} of length >= 2, got {letters!r}")
    if set(letters) != {"x", "y"}:
        raise ValueError("entry sequence needs at least one x and one y")
    return letters


def sequence_matrix(letters: str, ring: PolyRing | None = None) -> LinearMatrix:
    """Bidiagonal matrix: column j has z in row j and -c_j in row j+1."""
    letters = check_sequence(letters)
    R = ring or xyz_ring()
    x, y, z = R.gens()
    n = len(letters) + 1
    rows = [[R.zero() for _ in range(n - 1)] for _ in range(n)]
    for j, c in enumerate(letters):
        rows[j][j] = z
        rows[j + 1][j] = -(x if c == "x" else y)
    return LinearMatrix(R, tuple(map(tuple, rows)))


def monomial_family(letters: str, ring: PolyRing | None = None) -> tuple[LinearMatrix, list[Poly]]:
    phi = sequence_matrix(letters, ring)
    gens = Instance(phi).generators
    for g in gens:
        if len(g.terms) != 1:
            raise AssertionError(f"minor {g} is not a monomial")
    return phi, gens


def _local_minimal_exponents(gens, keep_var: int) -> list:
    exps = set()
    for g in gens:
        (e,) = g.terms
        exps.add(tuple(a for i, a in enumerate(e) if i != keep_var))
    return sorted(e for e in exps if not any(o != e and all(a <= b for a, b in zip(o, e)) for o in exps))


def monomial_local_mu(gens, keep_var: int) -> int:
    """Minimal generators of I localized at the prime of the other two
    variables: set ``keep_var`` to 1 and count minimal monomials."""
    return len(_local_minimal_exponents(gens, keep_var))


def monomial_local_orders(gens, keep_var: int) -> list[int]:
    """Orders, at the prime of the other two variables, of the minimal
    generators of the localization.  Monomial ideals only."""
    return sorted(sum(e) for e in _local_minimal_exponents(gens, keep_var))


def split_monomial_family(n: int, r: int, ring: PolyRing | None = None) -> list[Poly]:
    """x y^{n-2-k} z^k for k < r, then y^{n-1-k} z^k for r <= k <= n-1."""
    if n < 3 or not 1 <= r <= n - 1:
        raise ValueError(f"need n >= 3 and 1 <= r <= n-1, got n={n}, r={r}")
    R = ring or xyz_ring()
    x, y, z = R.gens()
    gens = [x * y ** (n - 2 - k) * z ** k for k in range(r)]
    gens += [y ** (n - 1 - k) * z ** k for k in range(r, n)]
    return gens


def sequences_with(n: int, xs: int | None = None) -> list[str]:
    """All valid entry sequences of length n-1, optionally with a fixed x count."""
    out = []
    for mask in range(1 << (n - 1)):
        w = "".join("x" if mask >> k & 1 else "y" for k in range(n - 1))
        if set(w) == {"x", "y"} and (xs is None or w.count("x") == xs):
            out.append(w)
    return sorted(out)


# arrangements ---------------------------------------------------------------------------

@dataclass
class ArrangementData:
    phi: LinearMatrix
    generators: list
    points: list  # (point, lines through it, multiplicity)
    fat_identity: bool

    @property
    def multiplicities(self) -> list:
        return sorted((m for _, _, m in self.points), reverse=True)

    def as_dict(self) -> dict:
        return {
            "generators": [str(g) for g in self.generators],
            "points": [{"point": [str(v) for v in p], "lines": list(ls), "mult": m} for p, ls, m in self.points],
            "fat_identity": self.fat_identity,
        }


def check_arrangement(forms) -> list[Poly]:
    forms = list(forms)
    if len(forms) < 3:
        raise ValueError("an arrangement needs at least three lines")
    R = forms[0].ring
    if R.nvars != 3:
        raise ValueError("arrangements live in three variables")
    if matrix_rank(linear_coeff_matrix(forms), R.field) != 3:
        raise ValueError("the forms do not span the linear forms")
    for a, b in combinations(range(len(forms)), 2):
        if matrix_rank(linear_coeff_matrix([forms[a], forms[b]]), R.field) < 2:
            raise ValueError(f"forms {forms[a]} and {forms[b]} are proportional")
    return forms


def arrangement_points(forms) -> list:
    """(point, indices of lines through it, lines - 1) for every intersection point."""
    groups: dict = {}
    for a, b in combinations(range(len(forms)), 2):
        pt = point_of_prime([forms[a], forms[b]])
        groups.setdefault(pt, set()).update((a, b))
    out = [(pt, tuple(sorted(ls)), len(ls) - 1) for pt, ls in groups.items()]
    out.sort(key=lambda item: (-item[2], item[1]))
    return out


def fat_ideal(ring: PolyRing, spec) -> IdealHandle:
    """Intersection of powers of point ideals; spec is [(point, mult)]."""
    out = None
    for pt, m in spec:
        P = IdealHandle(ring, prime_of_point(ring, pt)).power(m)
        out = P if out is None else intersect(out, P)
    return out


def arrangement_family(forms, verify: bool = True) -> ArrangementData:
    forms = check_arrangement(forms)
    R = forms[0].ring
    n = len(forms)
    rows = [[R.zero() for _ in range(n - 1)] for _ in range(n)]
    for j in range(n - 1):
        rows[j][j] = forms[j]
        rows[j + 1][j] = -forms[j + 1]
    phi = LinearMatrix(R, tuple(map(tuple, rows)))
    gens = Instance(phi).generators
    for i, g in enumerate(gens):
        prod = R.one()
        for k, f in enumerate(forms):
            if k != i:
                prod = prod * f
        if g.primitive() != prod.primitive() and g.primitive() != (-prod).primitive():
            raise AssertionError("signed minors differ from the reciprocal products")
    pts = arrangement_points(forms)
    ok = False
    if verify:
        fat = fat_ideal(R, [(p, m) for p, _, m in pts])
        ok = ideal_equal(fat, IdealHandle(R, gens))
    return ArrangementData(phi, gens, pts, ok)


def is_concurrent_degenerate(forms) -> bool:
    """Some n-1 of the forms span only a 2-dimensional space."""
    F = forms[0].ring.field
    n = len(forms)
    return any(matrix_rank(linear_coeff_matrix(list(sub)), F) == 2 for sub in combinations(forms, n - 1))


# fat points ----------------------------------------------------------------------------

@dataclass
class FatPointResult:
    ideal: IdealHandle
    generators: list
    equigenerated: bool
    phi: LinearMatrix | None = None
    nullity: int | None = None
    u: int | None = None
    expected_u: int | None = None
    subhomaloidal_s: int | None = None
    system_dim: int | None = None
    notes: list = field(default_factory=list)

    @property
    def expected_system_dim(self) -> int | None:
        return None if self.subhomaloidal_s is None else (self.subhomaloidal_s + 5) // 2

    def as_dict(self) -> dict:
        return {
            "generators": [str(g) for g in self.generators],
            "equigenerated": self.equigenerated,
            "phi": None if self.phi is None else self.phi.to_strings(),
            "nullity": self.nullity,
            "u": self.u,
            "expected_u": self.expected_u,
            "subhomaloidal_s": self.subhomaloidal_s,
            "system_dim": self.system_dim,
            "expected_system_dim": self.expected_system_dim,
            "notes": list(self.notes),
        }


def fat_point_ideal(ring: PolyRing, spec) -> FatPointResult:
    """spec: [(point or pair of linear forms, multiplicity)], sorted by multiplicity."""
    pts = []
    for prime, m in spec:
        if int(m) < 1:
            raise ValueError("multiplicities must be positive")
        if prime and isinstance(prime[0], Poly):
            pt = point_of_prime(prime)
        else:
            pt = normalize_point([ring.field(v) for v in prime])
        pts.append((pt, int(m)))
    if len({p for p, _ in pts}) != len(pts):
        raise ValueError("repeated point in the fat point spec")
    pts.sort(key=lambda item: -item[1])
    I = fat_ideal(ring, pts)
    gens = minimal_generators(I)
    degs = {g.total_degree() for g in gens}
    res = FatPointResult(I, gens, len(degs) == 1)
    res.subhomaloidal_s = subhomaloidal_degree([m for _, m in pts])
    if res.subhomaloidal_s is not None:
        res.system_dim = graded_piece_dimension(I, res.subhomaloidal_s)
    if not res.equigenerated:
        res.notes.append(f"generator degrees {sorted(degs)}")
        return res
    syz = linear_syzygy_matrix(gens)
    res.nullity = syz.nullity
    if not syz.ok:
        res.notes.append(syz.reason)
        return res
    res.phi = syz.phi
    n = len(gens)
    res.expected_u = n - pts[0][1] - 1
    try:
        res.u = chaos_invariant(Instance(syz.phi)).u
    except HypothesisError as exc:
        res.notes.append(f"outside the standing hypotheses: {exc}")
    return res


# sub-homaloidal arithmetic -----------------------------------------------------------

def subhomaloidal_degree(mults) -> int | None:
    mults = [int(m) for m in mults]
    if any(m < 0 for m in mults):
        raise ValueError("multiplicities must be nonnegative")
    s1 = sum(mults)
    if s1 % 3:
        return None
    s = s1 // 3 + 1
    if sum(m * m for m in mults) != s * (s - 1):
        return None
    if s % 2 == 0:
        raise AssertionError(f"sub-homaloidal degree {s} is even for {mults}")
    return s


# degenerate arrangements ------------------------------------------------------------

@dataclass
class DegenerateReport:
    n: int
    concurrent: bool
    u: int | None
    u_is_one: bool | None
    reduction_number: int | None
    reduction_at_most_one: bool | None
    agree: bool
    sum_m: int
    sum_m2: int
    mu_square: int | None
    identities: dict

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def general_reduction_number(Q: IdealHandle, seed: int = 0, tries: int = 6) -> int:
    """Top degree of k[t]/(Q, general linear forms): the reduction number
    with respect to a general minimal reduction."""
    d = hilbert_series(Q).dim
    for attempt in range(tries):
        theta = random_linear_forms(Q.ring, d, seed + attempt)
        cut = _cut_by_linear_forms(Q, theta)
        if cut is None:
            continue
        hc = hilbert_series(cut)
        if hc.dim == 0:
            return len(hc.h_polynomial) - 1
    raise RuntimeError("no system of parameters found")


def degenerate_arrangement_check(forms, seed: int = 0) -> DegenerateReport:
    data = arrangement_family(forms, verify=False)
    n = len(forms)
    inst = Instance(data.phi, seed)
    conc = is_concurrent_degenerate(forms)
    u = chaos_invariant(inst).u
    r = general_reduction_number(inst.fiber, seed)
    ms = [m for _, _, m in data.points]
    mu2 = hilbert_series(inst.fiber).hilbert_function(2)
    ident = {
        "sum_m": sum(ms) == 2 * n - 3,
        "sum_m2": sum(m * m for m in ms) == n * n - 3 * n + 3,
        "mu_square": mu2 == 3 * (n - 1),
    }
    agree = conc == (u == 1) == (r <= 1)
    return DegenerateReport(n, conc, u, u == 1, r, r <= 1, agree, sum(ms), sum(m * m for m in ms), mu2, ident)
