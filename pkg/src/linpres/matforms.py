"""Matrices of linear forms: minors, Hilbert–Burch generators, conjugation,
1-genericity and canonical block shapes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .groebner import IdealHandle
from .poly import (
    FieldSpec,
    Poly,
    PolyRing,
    binary_form_gcd,
    linear_factor_roots,
    matrix_rank,
    nullspace,
    polyring,
    ring_map_apply,
    rref,
)


class ShapeError(ValueError):
    pass


class CanonicalFormUnavailable(ValueError):
    """The requested prime is not a rational linear prime of the right rank."""


@dataclass(frozen=True)
class LinearMatrix:
    ring: PolyRing
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise ShapeError("matrix must be at least 1x1")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ShapeError("ragged matrix")
            for f in r:
                if f.ring != self.ring:
                    raise ShapeError("entry outside the matrix ring")
                if any(sum(e) != 1 for e in f.terms):
                    raise ShapeError(f"entry {f} is not a linear form")

    @classmethod
    def from_strings(cls, ring: PolyRing, rows: Sequence[Sequence[str]]) -> "LinearMatrix":
        return cls(ring, tuple(tuple(ring(s) for s in r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j) -> list:
        return [r[j] for r in self.rows]

    def transpose(self) -> "LinearMatrix":
        return LinearMatrix(self.ring, tuple(zip(*self.rows)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "LinearMatrix":
        return LinearMatrix(self.ring, tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def to_strings(self) -> list:
        return [[str(f) for f in r] for r in self.rows]

    def evaluate(self, point: Sequence) -> list:
        return [[f.evaluate(point) for f in r] for r in self.rows]

    def coefficient_matrix(self, var: int) -> list:
        """Scalar matrix of the coefficients of one variable."""
        F = self.ring.field
        e = tuple(1 if k == var else 0 for k in range(self.ring.nvars))
        return [[f.terms.get(e, F.zero) for f in r] for r in self.rows]

    def scalar_transform(self, left: Sequence, right: Sequence) -> "LinearMatrix":
        """left · M · right for scalar matrices."""
        F = self.ring.field
        R = self.ring
        m, n = self.shape
        left = [[F(v) for v in r] for r in left]
        right = [[F(v) for v in r] for r in right]
        tmp = []
        for i in range(len(left)):
            row = []
            for j in range(n):
                acc = R.zero()
                for k in range(m):
                    if left[i][k]:
                        acc = acc + self.rows[k][j].scale(left[i][k])
                row.append(acc)
            tmp.append(row)
        out = []
        for i in range(len(tmp)):
            row = []
            for j in range(len(right[0])):
                acc = R.zero()
                for k in range(n):
                    if right[k][j]:
                        acc = acc + tmp[i][k].scale(right[k][j])
                row.append(acc)
            out.append(tuple(row))
        return LinearMatrix(R, tuple(out))

    def substitute(self, images: Sequence[Poly]) -> "LinearMatrix":
        target = images[0].ring
        return LinearMatrix(target, tuple(tuple(ring_map_apply(f, images) for f in r) for r in self.rows))

    def __str__(self):
        cells = self.to_strings()
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)


# minors ---------------------------------------------------------------------------

class _MinorCache:
    """Laplace expansion along the first listed row, memoized on (rows, cols)."""

    def __init__(self, M: LinearMatrix):
        self.M = M
        self.memo: dict = {}

    def det(self, rows: tuple, cols: tuple) -> Poly:
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        M = self.M
        if len(rows) == 1:
            val = M.rows[rows[0]][cols[0]]
        else:
            val = M.ring.zero()
            r0 = rows[0]
            rest = rows[1:]
            for k, c in enumerate(cols):
                a = M.rows[r0][c]
                if not a:
                    continue
                sub = self.det(rest, cols[:k] + cols[k + 1:])
                if not sub:
                    continue
                term = a * sub
                val = val - term if k % 2 else val + term
        self.memo[key] = val
        return val


def determinant(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square matrix of polynomials (Laplace, memoized)."""
    n = len(rows)
    ring = rows[0][0].ring
    memo: dict = {}

    def det(rs, cs):
        key = (rs, cs)
        if key in memo:
            return memo[key]
        if len(rs) == 1:
            v = rows[rs[0]][cs[0]]
        else:
            v = ring.zero()
            for k, c in enumerate(cs):
                a = rows[rs[0]][c]
                if a:
                    sub = det(rs[1:], cs[:k] + cs[k + 1:])
                    v = v - a * sub if k % 2 else v + a * sub
        memo[key] = v
        return v

    return det(tuple(range(n)), tuple(range(n)))


def all_minors(M: LinearMatrix, t: int) -> list[Poly]:
    m, n = M.shape
    if not 1 <= t <= min(m, n):
        raise ShapeError(f"minor size {t} out of range for a {m}x{n} matrix")
    cache = _MinorCache(M)
    out = []
    for rows in combinations(range(m), t):
        for cols in combinations(range(n), t):
            out.append(cache.det(rows, cols))
    return out


def linear_span_basis(polys: Sequence[Poly]) -> list[Poly]:
    """A k-basis (reduced echelon form) of the span of the given polynomials."""
    polys = [f for f in polys if f]
    if not polys:
        return []
    ring = polys[0].ring
    F = ring.field
    monos = sorted({e for f in polys for e in f.terms}, key=ring.sort_key, reverse=True)
    col = {e: i for i, e in enumerate(monos)}
    rows = []
    for f in polys:
        r = [F.zero] * len(monos)
        for e, c in f.terms.items():
            r[col[e]] = c
        rows.append(r)
    R, _ = rref(rows, F)
    return [Poly(ring, {monos[i]: c for i, c in enumerate(r) if c}) for r in R]


def minors_ideal(M: LinearMatrix, t: int) -> IdealHandle:
    """Ideal of t×t minors; I_1 is the ideal of entries."""
    return IdealHandle(M.ring, linear_span_basis(all_minors(M, t)))


def hilbert_burch_generators(phi: LinearMatrix) -> list[Poly]:
    """Signed maximal minors f_i = (-1)^i det(phi without row i), 0-based,
    so that sum_i f_i phi[i][j] = 0 for every column j."""
    n, m = phi.shape
    if n != m + 1:
        raise ShapeError(f"expected an n x (n-1) matrix, got {n}x{m}")
    cache = _MinorCache(phi)
    cols = tuple(range(m))
    gens = []
    for i in range(n):
        rows = tuple(r for r in range(n) if r != i)
        d = cache.det(rows, cols)
        gens.append(-d if i % 2 else d)
    for j in range(m):
        s = phi.ring.zero()
        for i in range(n):
            s = s + gens[i] * phi.rows[i][j]
        if s:
            raise AssertionError("Hilbert–Burch annihilation failed")
    return gens


# conjugation ---------------------------------------------------------------------

@dataclass(frozen=True)
class ConjugationAction:
    """(coordinate change, row operation, column operation).

    ``coord_change[i][j]``: the old variable i becomes sum_j G[i][j]·x_j.
    """

    coord_change: tuple
    row_op: tuple
    col_op: tuple

    @staticmethod
    def identity(nvars: int, nrows: int, ncols: int) -> "ConjugationAction":
        def eye(k):
            return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))

        return ConjugationAction(eye(nvars), eye(nrows), eye(ncols))

    def check(self, field: FieldSpec):
        for name, A in (("coord_change", self.coord_change), ("row_op", self.row_op), ("col_op", self.col_op)):
            if matrix_rank([list(r) for r in A], field) != len(A):
                raise ValueError(f"{name} is not invertible")

    def as_dict(self) -> dict:
        s = lambda A: [[str(v) for v in r] for r in A]
        return {"coord_change": s(self.coord_change), "row_op": s(self.row_op), "col_op": s(self.col_op)}


def coordinate_images(ring: PolyRing, G: Sequence[Sequence]) -> list[Poly]:
    gens = ring.gens()
    F = ring.field
    out = []
    for i in range(ring.nvars):
        img = ring.zero()
        for j, g in enumerate(G[i]):
            c = F(g)
            if c:
                img = img + gens[j].scale(c)
        out.append(img)
    return out


def conjugate(M: LinearMatrix, action: ConjugationAction) -> LinearMatrix:
    action.check(M.ring.field)
    m, n = M.shape
    if len(action.row_op) != m or len(action.col_op) != n or len(action.coord_change) != M.ring.nvars:
        raise ShapeError("action dimensions do not match the matrix")
    moved = M.substitute(coordinate_images(M.ring, action.coord_change))
    return moved.scalar_transform(action.row_op, action.col_op)


def rank_at_point(M: LinearMatrix, point: Sequence) -> int:
    if not any(point):
        raise ValueError("the zero vector is not a projective point")
    return matrix_rank(M.evaluate(point), M.ring.field)


# 1-genericity ---------------------------------------------------------------------

@dataclass
class OneGenericResult:
    one_generic: bool
    gcd: Poly | None
    row_witness: tuple | None = None
    col_witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.one_generic

    def as_dict(self) -> dict:
        return {
            "one_generic": self.one_generic,
            "gcd": None if self.gcd is None else str(self.gcd),
            "row_witness": None if self.row_witness is None else [str(a) for a in self.row_witness],
            "col_witness": None if self.col_witness is None else [str(c) for c in self.col_witness],
            "reason": self.reason,
        }


def one_generic_test(M: LinearMatrix) -> OneGenericResult:
    """Exact 1-genericity test for a 2×r matrix of linear forms.

    With a symbolic row vector a = (a1, a2), a·M·c = 0 has a nonzero
    solution c exactly when the (nvars × r) coefficient matrix K(a) drops
    rank, i.e. when all r×r minors of K(a) vanish.  These are binary forms
    in a, so a generalized zero exists over the algebraic closure iff their
    gcd is not a unit.
    """
    if M.nrows != 2:
        raise ShapeError("one_generic_test needs a 2-row matrix")
    F = M.ring.field
    A = polyring("a1 a2", field=F)
    a1, a2 = A.gens()
    N, r = M.ring.nvars, M.ncols
    K = []
    for v in range(N):
        c0 = M.coefficient_matrix(v)
        K.append([a1.scale(c0[0][j]) + a2.scale(c0[1][j]) if (c0[0][j] or c0[1][j]) else A.zero()
                  for j in range(r)])
    if N < r:
        return _generic_witness(M, A.zero(), (F.one, F.zero), "fewer variables than columns")
    minors = [determinant([K[i] for i in rows]) for rows in combinations(range(N), r)]
    nz = [m for m in minors if m]
    if not nz:
        return _generic_witness(M, A.zero(), (F.one, F.zero), "all minors vanish identically")
    g = binary_form_gcd(nz)
    if g.is_constant():
        return OneGenericResult(True, g, reason="gcd of coefficient minors is 1")
    roots = linear_factor_roots(g)
    if roots:
        return _generic_witness(M, g, roots[0], "common rational root")
    return OneGenericResult(False, g, reason="common root over an extension field")


def _generic_witness(M: LinearMatrix, g, a, reason) -> OneGenericResult:
    F = M.ring.field
    a = (F(a[0]), F(a[1]))
    N, r = M.ring.nvars, M.ncols
    rows = []
    for v in range(N):
        c0 = M.coefficient_matrix(v)
        rows.append([F.norm(a[0] * c0[0][j] + a[1] * c0[1][j]) for j in range(r)])
    ker = nullspace(rows, r, F)
    c = tuple(ker[0]) if ker else None
    return OneGenericResult(False, g, a, c, reason)


# structured matrices ---------------------------------------------------------------

def _t(ring: PolyRing, prefix: str, i: int) -> Poly:
    return ring.var(f"{prefix}{i}")


def structured_matrix(kind: str, ring: PolyRing, *, n: int | None = None, start: int | None = None,
                      stop: int | None = None, column: Sequence[Poly] | None = None,
                      prefix: str = "t") -> LinearMatrix:
    """catalecticant2step(n): [[t0..t_{n-3}], [t2..t_{n-1}]];
    hankel(start..stop): [[t_start..t_{stop-1}], [t_{start+1}..t_stop]];
    scroll_block: a Hankel block with ``column`` prepended."""
    if kind == "catalecticant2step":
        if n is None or n < 3:
            raise ShapeError("catalecticant2step needs n >= 3")
        top = [_t(ring, prefix, i) for i in range(0, n - 2)]
        bot = [_t(ring, prefix, i) for i in range(2, n)]
        return LinearMatrix(ring, (tuple(top), tuple(bot)))
    if kind in ("hankel", "scroll_block"):
        if start is None or stop is None or stop <= start:
            raise ShapeError("hankel needs start < stop")
        top = [_t(ring, prefix, i) for i in range(start, stop)]
        bot = [_t(ring, prefix, i) for i in range(start + 1, stop + 1)]
        if kind == "scroll_block":
            if column is None or len(column) != 2:
                raise ShapeError("scroll_block needs a column of two forms")
            top = [column[0]] + top
            bot = [column[1]] + bot
        return LinearMatrix(ring, (tuple(top), tuple(bot)))
    raise ShapeError(f"unknown structured matrix kind {kind!r}")


# canonical form ---------------------------------------------------------------------

def point_of_prime(forms: Sequence[Poly]) -> tuple:
    """Common zero (a:b:c) of two independent linear forms in three variables."""
    from .poly import linear_coeff_matrix

    if len(forms) != 2:
        raise CanonicalFormUnavailable("a linear prime needs exactly two forms")
    (a, b, c), (d, e, f) = linear_coeff_matrix(forms)
    pt = (b * f - c * e, c * d - a * f, a * e - b * d)
    if not any(pt):
        raise CanonicalFormUnavailable("the two forms are dependent")
    return normalize_point(pt)


def normalize_point(pt: Sequence) -> tuple:
    """Scale a projective point so its last nonzero coordinate is 1."""
    k = max(i for i, v in enumerate(pt) if v)
    return tuple(v / pt[k] for v in pt)


def prime_of_point(ring: PolyRing, pt: Sequence) -> list[Poly]:
    """Two linear forms generating the ideal of a point of P^2."""
    F = ring.field
    pt = [F(v) for v in pt]
    basis = nullspace([pt], 3, F)
    out = []
    for v in basis:
        f = ring.zero()
        for k, c in enumerate(v):
            if c:
                f = f + ring.gens()[k].scale(c)
        out.append(f.primitive())
    return out


def _complete_basis(pt: Sequence, F: FieldSpec) -> list:
    """Invertible 3x3 matrix whose first column is ``pt``."""
    cols = [list(pt)]
    for k in range(3):
        e = [F.one if i == k else F.zero for i in range(3)]
        trial = cols + [e]
        if matrix_rank([list(r) for r in zip(*trial)], F) == len(trial):
            cols.append(e)
        if len(cols) == 3:
            break
    return [list(r) for r in zip(*cols)]


def _diagonalizing_ops(A: list, F: FieldSpec) -> tuple[list, list, int]:
    """Invertible U, V with U·A·V = diag(I_u, 0)."""
    m, n = len(A), len(A[0])
    aug = [list(A[i]) + [F.one if j == i else F.zero for j in range(m)] for i in range(m)]
    R, pivots = rref(aug, F)
    piv = [c for c in pivots if c < n]
    u = len(piv)
    # complete U with the remaining rows of the rref (rows beyond the pivots
    # of the A-part act on the zero part)
    full, _ = _rref_all_rows(aug, F)
    U = [row[n:] for row in full]
    E = [row[:n] for row in full]
    perm = piv + [c for c in range(n) if c not in piv]
    V = [[F.zero] * n for _ in range(n)]
    for newc, oldc in enumerate(perm):
        V[oldc][newc] = F.one
    # clear the non-pivot entries of the first u rows
    X = [[E[i][perm[j]] for j in range(u, n)] for i in range(u)]
    V2 = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    for i in range(u):
        for j in range(u, n):
            V2[i][j] = F.norm(-X[i][j - u])
    V = _matmul(V, V2, F)
    return U, V, u


def _rref_all_rows(aug: list, F: FieldSpec) -> tuple[list, list]:
    """rref keeping zero rows, so the identity part stays square."""
    M = [list(r) for r in aug]
    rows, cols = len(M), len(M[0])
    r = 0
    pivots = []
    for c in range(cols):
        piv = next((k for k in range(r, rows) if M[k][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.norm(v * inv) for v in M[r]]
        for k in range(rows):
            if k != r and M[k][c]:
                f = M[k][c]
                M[k] = [F.norm(a - f * b) for a, b in zip(M[k], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def _matmul(A, B, F):
    return [[F.norm(sum((A[i][k] * B[k][j] for k in range(len(B))), F.zero)) for j in range(len(B[0]))]
            for i in range(len(A))]


@dataclass
class CanonicalForm:
    phi: LinearMatrix
    action: ConjugationAction
    u: int
    point: tuple


def canonicalize_chaos_form(phi: LinearMatrix, prime, u: int | None = None) -> CanonicalForm:
    """Conjugate phi so the prime goes to (y, z) and phi mod (y, z) is diag(I_u, 0).

    ``prime`` is either two linear forms or a point (a, b, c).
    """
    ring = phi.ring
    F = ring.field
    if ring.nvars != 3:
        raise CanonicalFormUnavailable("canonical form is defined over k[x,y,z]")
    if prime and isinstance(prime[0], Poly):
        pt = point_of_prime(prime)
    else:
        pt = normalize_point([F(v) for v in prime])
    rank = rank_at_point(phi, pt)
    if u is not None and rank != u:
        raise CanonicalFormUnavailable(f"rank at the point is {rank}, expected {u}")
    G = _complete_basis(pt, F)
    moved = phi.substitute(coordinate_images(ring, G))
    A = moved.coefficient_matrix(0)
    U, V, r = _diagonalizing_ops(A, F)
    assert r == rank
    phi_c = moved.scalar_transform(U, V)
    action = ConjugationAction(tuple(map(tuple, G)), tuple(map(tuple, U)), tuple(map(tuple, V)))
    if not is_canonical_block(phi_c, rank):
        raise AssertionError("canonicalization did not produce the block shape")
    return CanonicalForm(phi_c, action, rank, pt)


def is_canonical_block(phi: LinearMatrix, u: int) -> bool:
    """x appears exactly on the first u diagonal slots, with coefficient 1."""
    A = phi.coefficient_matrix(0)
    for i in range(phi.nrows):
        for j in range(phi.ncols):
            want = 1 if (i == j and i < u) else 0
            if A[i][j] != want:
                return False
    return True
