"""Rational points of zero-dimensional projective schemes in P^2."""

from __future__ import annotations

from .groebner import IdealHandle, groebner_basis
from .poly import LEX, Poly, polyring, rational_roots, ring_map_apply, upoly_gcd


def _dense(f: Poly, var: int) -> list:
    """Dense coefficients (low→high) of a univariate polynomial."""
    F = f.ring.field
    d = max((e[var] for e in f.terms), default=0)
    out = [F.zero] * (d + 1)
    for e, c in f.terms.items():
        out[e[var]] = F.norm(out[e[var]] + c)
    return out


def _common_roots(polys: list, var: int, F) -> list | None:
    """Common rational roots of univariate polynomials; None if all vanish."""
    g = []
    for f in polys:
        if f:
            g = _dense(f, var) if not g else upoly_gcd(g, _dense(f, var), F)
    if not g:
        return None
    return rational_roots(g, F)


def rational_points(J: IdealHandle) -> list[tuple]:
    """Rational points of V(J) ⊂ P^2 for a homogeneous ideal J of height >= 2.

    Scans the charts z=1, then (z=0, y=1), then (1:0:0).  Points are
    normalized so the last nonzero coordinate is 1.  Raises if some chart
    turns out to be positive-dimensional.
    """
    R = J.ring
    if R.nvars != 3:
        raise ValueError("rational_points works in three variables")
    F = R.field
    gens = list(J.generators)
    pts: list[tuple] = []

    A = polyring([R.variables[0], R.variables[1]], order=LEX, field=F)
    X, Y = A.gens()
    aff = [ring_map_apply(g, [X, Y, A.one()]) for g in gens]
    gb = groebner_basis(aff, A)
    if not any(g.is_constant() for g in gb):
        ys = [g for g in gb if all(e[0] == 0 for e in g.terms)]
        yroots = _common_roots(ys, 1, F)
        if yroots is None:
            raise ValueError("affine chart is positive-dimensional")
        for b in yroots:
            B1 = polyring([R.variables[0]], field=F)
            xs = [ring_map_apply(g, [B1.gens()[0], B1.const(b)]) for g in gb]
            xroots = _common_roots(xs, 0, F)
            if xroots is None:
                raise ValueError("affine chart is positive-dimensional")
            pts.extend((a, b, F.one) for a in xroots)

    B1 = polyring([R.variables[0]], field=F)
    t = B1.gens()[0]
    line = [ring_map_apply(g, [t, B1.one(), B1.zero()]) for g in gens]
    xroots = _common_roots(line, 0, F)
    if xroots is None:
        raise ValueError("the line z=0 lies in V(J)")
    pts.extend((a, F.one, F.zero) for a in xroots)

    if all(not g.evaluate((1, 0, 0)) for g in gens):
        pts.append((F.one, F.zero, F.zero))
    return sorted(set(pts), key=lambda p: tuple((v == 0, v) for v in reversed(p)))
