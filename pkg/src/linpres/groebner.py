"""Buchberger engine over packed monomials, plus derived ideal operations.

Monomials are packed into Python ints, 16 bits per field with a guard bit,
laid out so that the monomial order key is *additive*: the key of a product
is the sum of the keys.  The reduction loop therefore never unpacks
exponents except when it searches for a reducer.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from .poly import (
    DEGREVLEX,
    MonomialOrder,
    Poly,
    PolyRing,
    RingMismatchError,
    divide_exact,
)

log = logging.getLogger(__name__)

FIELD = 16
MAXEXP = (1 << (FIELD - 1)) - 1


class _Encoder:
    """Exponent tuple <-> packed int <-> additive order key for one ring."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        n = ring.nvars
        w = ring.weights
        kind = ring.order.kind
        # blocks listed from most to least significant
        if kind == "degrevlex":
            blocks = [(list(range(n)), True)]
        elif kind == "block":
            k = ring.order.block_split
            blocks = [(list(range(k)), True), (list(range(k, n)), True)]
        else:
            # lex: variable 0 in the top field, no degree field
            blocks = [(list(range(n - 1, -1, -1)), False)]
        self.blocks = []
        offset = 0
        for vars_, graded in reversed(blocks):
            nf = len(vars_) + (1 if graded else 0)
            self.blocks.append((vars_, graded, offset, FIELD * len(vars_), nf * FIELD))
            offset += nf * FIELD
        self.blocks.reverse()
        self.width = offset
        self.guard = 0
        for f in range(offset // FIELD):
            self.guard |= 1 << (f * FIELD + FIELD - 1)
        self.weights = w
        self.n = n
        self.single_drl = kind == "degrevlex"
        self.lex = kind == "lex"
        if self.single_drl:
            self.S = FIELD * n

    def encode(self, exp) -> int:
        P = 0
        w = self.weights
        for vars_, graded, offset, S, _ in self.blocks:
            b = 0
            for k, v in enumerate(vars_):
                e = exp[v]
                if e > MAXEXP:
                    raise OverflowError("exponent too large for packed monomials")
                b |= e << (FIELD * k)
            if graded:
                b |= sum(exp[v] * w[v] for v in vars_) << S
            P |= b << offset
        return P

    def decode(self, P: int) -> tuple:
        exp = [0] * self.n
        mask = (1 << FIELD) - 1
        for vars_, graded, offset, S, width in self.blocks:
            b = P >> offset
            for k, v in enumerate(vars_):
                exp[v] = (b >> (FIELD * k)) & mask
        return tuple(exp)

    def key(self, P: int) -> int:
        if self.single_drl:
            return ((P >> self.S) << (self.S + 1)) - P
        if self.lex:
            return P
        K = 0
        for vars_, graded, offset, S, width in self.blocks:
            b = (P >> offset) & ((1 << width) - 1)
            K |= ((((b >> S) << (S + 1)) - b) if graded else b) << offset
        return K

    def unkey(self, K: int) -> int:
        if self.single_drl:
            S = self.S
            hi = -((-K) >> S)
            return (hi << (S + 1)) - K
        if self.lex:
            return K
        P = 0
        for vars_, graded, offset, S, width in self.blocks:
            kb = (K >> offset) & ((1 << width) - 1)
            if graded:
                hi = -((-kb) >> S)
                kb = (hi << (S + 1)) - kb
            P |= kb << offset
        return P

    def wdeg(self, exp) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))


@dataclass
class _GBElt:
    lead_P: int
    lead_K: int
    lead_exp: tuple
    terms: list  # [(K, c)] descending, monic
    sugar: int


class GroebnerEngine:
    """Sugar-strategy Buchberger with Gebauer–Möller pair pruning."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.enc = _Encoder(ring)
        F = ring.field
        self.p = F.characteristic if F.is_prime else 0
        self.F = F
        self.stats = {"pairs": 0, "zero_reductions": 0, "pruned": 0}

    # conversion --------------------------------------------------------
    def to_internal(self, f: Poly) -> dict:
        enc = self.enc
        return {enc.key(enc.encode(e)): c for e, c in f.terms.items()}

    def to_poly(self, terms: Iterable) -> Poly:
        enc = self.enc
        return Poly(self.ring, {enc.decode(enc.unkey(k)): c for k, c in terms})

    # reduction ----------------------------------------------------------
    def reduce(self, acc: dict, leads: list) -> list:
        """Fully reduce the polynomial held in ``acc`` (key -> coeff)."""
        p = self.p
        G = self.enc.guard
        unkey = self.enc.unkey
        heap = [-k for k in acc]
        heapq.heapify(heap)
        push, pop = heapq.heappush, heapq.heappop
        get = acc.get
        out = []
        while heap:
            k = -pop(heap)
            c = acc.pop(k)
            if p:
                c %= p
            if not c:
                continue
            P = unkey(k)
            for lp, lk, tail in leads:
                if ((P + G - lp) & G) == G:
                    break
            else:
                out.append((k, c))
                continue
            ks = k - lk
            for tk, tc in tail:
                nk = tk + ks
                v = get(nk)
                if v is None:
                    acc[nk] = -c * tc
                    push(heap, -nk)
                else:
                    acc[nk] = v - c * tc
        return out

    def _monic(self, terms: list) -> list:
        c0 = terms[0][1]
        if c0 == 1:
            return terms
        inv = self.F.inv(c0)
        if self.p:
            return [(k, c * inv % self.p) for k, c in terms]
        return [(k, c * inv) for k, c in terms]

    def _make(self, terms: list, sugar: int) -> _GBElt:
        terms = self._monic(terms)
        K = terms[0][0]
        P = self.enc.unkey(K)
        return _GBElt(P, K, self.enc.decode(P), terms, sugar)

    # main loop -----------------------------------------------------------
    def basis(self, polys: Sequence[Poly]) -> list[Poly]:
        enc = self.enc
        wdeg = enc.wdeg
        elts: list[_GBElt] = []
        active: list[int] = []
        pairs: list = []  # heap of (sugar, lcmK, i, j, lcm_exp)
        leads: list = []

        def refresh_leads():
            leads[:] = [(elts[i].lead_P, elts[i].lead_K, elts[i].terms[1:]) for i in active]

        def lcm(a, b):
            return tuple(x if x > y else y for x, y in zip(a, b))

        def divides(a, b):
            return all(x <= y for x, y in zip(a, b))

        def disjoint(a, b):
            return not any(x and y for x, y in zip(a, b))

        def update(h: int):
            nonlocal pairs
            eh = elts[h]
            lh = eh.lead_exp
            C = [(g, lcm(elts[g].lead_exp, lh)) for g in active]
            D = []
            for idx, (g, L) in enumerate(C):
                if disjoint(elts[g].lead_exp, lh):
                    D.append((g, L, True))
                    continue
                if any(divides(L2, L) for _, L2 in C[idx + 1:]):
                    continue
                if any(divides(L2, L) for _, L2, _ in D):
                    continue
                D.append((g, L, False))
            kept = []
            for item in pairs:
                _, _, i, j, L = item
                if (divides(lh, L) and lcm(elts[i].lead_exp, lh) != L
                        and lcm(elts[j].lead_exp, lh) != L):
                    self.stats["pruned"] += 1
                    continue
                kept.append(item)
            for g, L, coprime in D:
                if coprime:
                    self.stats["pruned"] += 1
                    continue
                eg = elts[g]
                dl = wdeg(L)
                sugar = max(eg.sugar - wdeg(eg.lead_exp), eh.sugar - wdeg(lh)) + dl
                kept.append((sugar, enc.key(enc.encode(L)), g, h, L))
            heapq.heapify(kept)
            pairs = kept
            active[:] = [g for g in active if not divides(lh, elts[g].lead_exp)] + [h]
            refresh_leads()

        inputs = []
        for f in polys:
            if f.ring.variables != self.ring.variables or f.ring.field != self.ring.field:
                raise RingMismatchError("generator outside the ring")
            if f:
                t = self.to_internal(f)
                sugar = max(wdeg(e) for e in f.terms)
                inputs.append((sugar, max(t), t))
        inputs.sort(key=lambda x: (x[0], x[1]))
        for sugar, _, t in inputs:
            red = self.reduce(dict(t), leads)
            if red:
                elts.append(self._make(red, sugar))
                update(len(elts) - 1)

        while pairs:
            sugar, _, i, j, L = heapq.heappop(pairs)
            self.stats["pairs"] += 1
            gi, gj = elts[i], elts[j]
            LK = enc.key(enc.encode(L))
            si, sj = LK - gi.lead_K, LK - gj.lead_K
            acc: dict = {}
            for k, c in gi.terms[1:]:
                acc[k + si] = c
            for k, c in gj.terms[1:]:
                nk = k + sj
                acc[nk] = acc.get(nk, 0) - c
            red = self.reduce(acc, leads)
            if not red:
                self.stats["zero_reductions"] += 1
                continue
            elts.append(self._make(red, sugar))
            update(len(elts) - 1)

        # interreduce the minimal basis
        final = []
        for idx in active:
            others = [(elts[g].lead_P, elts[g].lead_K, elts[g].terms[1:]) for g in active if g != idx]
            e = elts[idx]
            tail = self.reduce(dict(e.terms[1:]), others)
            final.append([e.terms[0]] + tail)
        final.sort(key=lambda t: t[0][0])
        return [self.to_poly(t) for t in final]

    def normal_form_internal(self, f: Poly, gb: Sequence[Poly]) -> Poly:
        leads = []
        for g in gb:
            t = sorted(self.to_internal(g).items(), reverse=True)
            t = self._monic(t)
            leads.append((self.enc.unkey(t[0][0]), t[0][0], t[1:]))
        return self.to_poly(self.reduce(self.to_internal(f), leads))


def groebner_basis(gens: Sequence[Poly], ring: PolyRing | None = None) -> list[Poly]:
    """Reduced Gröbner basis (monic) in ``ring``'s order."""
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    gens = [g.to_ring(ring) if g.ring != ring else g for g in gens]
    return GroebnerEngine(ring).basis(gens)


def reduce_poly(f: Poly, gb: Sequence[Poly]) -> Poly:
    ring = f.ring
    if not gb:
        return f
    return GroebnerEngine(ring).normal_form_internal(f, [g.to_ring(ring) for g in gb])


def spoly(f: Poly, g: Poly) -> Poly:
    lf, lg = f.lead_exp(), g.lead_exp()
    L = tuple(max(a, b) for a, b in zip(lf, lg))
    a = f.mul_monomial(tuple(x - y for x, y in zip(L, lf)), f.ring.field.inv(f.lead_coeff()))
    b = g.mul_monomial(tuple(x - y for x, y in zip(L, lg)), g.ring.field.inv(g.lead_coeff()))
    return a - b


def is_groebner(gb: Sequence[Poly]) -> bool:
    """Buchberger certificate: every S-polynomial reduces to zero."""
    for i in range(len(gb)):
        for j in range(i + 1, len(gb)):
            if reduce_poly(spoly(gb[i], gb[j]), gb):
                return False
    return True


# ideals -------------------------------------------------------------------------

def _same_space(a: PolyRing, b: PolyRing) -> bool:
    return a.variables == b.variables and a.field == b.field


class IdealHandle:
    """Generators plus cached reduced Gröbner bases, keyed by monomial order.

    Caches are filled on first use and never changed afterwards.
    """

    def __init__(self, ring: PolyRing, generators: Iterable[Poly] = ()):
        self.ring = ring
        gens = []
        for g in generators:
            if not _same_space(g.ring, ring):
                raise RingMismatchError(f"generator {g} is not in {ring.variables}")
            g = g.to_ring(ring)
            if g:
                gens.append(g)
        self.generators = tuple(gens)
        self._gb: dict = {}

    def __repr__(self):
        return f"IdealHandle({self.ring.variables}, [{', '.join(map(str, self.generators))}])"

    def gb(self, order: MonomialOrder | None = None, weights: tuple | None = None) -> list[Poly]:
        ring = self.ring if order is None else self.ring.with_order(order, weights)
        key = (ring.order, ring.weights)
        if key not in self._gb:
            self._gb[key] = groebner_basis([g.to_ring(ring) for g in self.generators], ring)
        return self._gb[key]

    def is_unit(self) -> bool:
        gb = self.gb()
        return any(g.is_constant() and g for g in gb)

    def is_zero(self) -> bool:
        return not self.generators

    def leading_exps(self, order: MonomialOrder | None = None) -> list[tuple]:
        return [g.lead_exp() for g in self.gb(order)]

    def contains(self, f: Poly) -> bool:
        return not normal_form(f, self)

    def __add__(self, other):
        if isinstance(other, IdealHandle):
            if not _same_space(self.ring, other.ring):
                raise RingMismatchError("ideals in different rings")
            return IdealHandle(self.ring, self.generators + other.generators)
        return IdealHandle(self.ring, self.generators + tuple(other))

    def __mul__(self, other: "IdealHandle"):
        return IdealHandle(self.ring, [f * g for f in self.generators for g in other.generators])

    def power(self, k: int) -> "IdealHandle":
        if k == 0:
            return IdealHandle(self.ring, [self.ring.one()])
        gens = list(self.generators)
        cur = {g for g in gens}
        for _ in range(k - 1):
            cur = {a * b for a in cur for b in gens}
        return IdealHandle(self.ring, sorted(cur, key=lambda f: f.ring.sort_key(f.lead_exp())))

    def mingens_basis(self) -> list[Poly]:
        return [g.primitive() for g in self.gb()]


def ideal(ring: PolyRing, gens: Iterable) -> IdealHandle:
    return IdealHandle(ring, [ring(g) for g in gens])


def normal_form(f: Poly, I: IdealHandle) -> Poly:
    if not _same_space(f.ring, I.ring):
        raise RingMismatchError("polynomial and ideal live in different rings")
    f = f.to_ring(I.ring)
    return reduce_poly(f, I.gb())


def ideal_equal(I: IdealHandle, J: IdealHandle) -> bool:
    if not _same_space(I.ring, J.ring):
        raise RingMismatchError("ideals in different rings")
    a = [g.terms for g in I.gb()]
    b = [g.to_ring(I.ring).terms for g in J.gb(I.ring.order, I.ring.weights)]
    return a == b


def ideal_contains(I: IdealHandle, J: IdealHandle) -> bool:
    """True iff J ⊆ I."""
    return all(not normal_form(g, I) for g in J.generators)


def eliminate(I: IdealHandle, drop_vars: Iterable[str], target: PolyRing | None = None) -> IdealHandle:
    """I ∩ k[remaining variables], via a two-block elimination order."""
    drop = [v for v in I.ring.variables if v in set(drop_vars)]
    if not drop:
        return I
    keep = [v for v in I.ring.variables if v not in drop]
    w = dict(zip(I.ring.variables, I.ring.weights))
    big = PolyRing(tuple(drop + keep), MonomialOrder("block", len(drop)), I.ring.field,
                   tuple(w[v] for v in drop + keep))
    gb = groebner_basis([g.to_ring(big) for g in I.generators], big)
    if target is None:
        target = PolyRing(tuple(keep), DEGREVLEX, I.ring.field, tuple(w[v] for v in keep))
    k = len(drop)
    out = [g for g in gb if all(not any(e[:k]) for e in g.terms)]
    return IdealHandle(target, [_project(g, target) for g in out])


def _project(g: Poly, target: PolyRing) -> Poly:
    idx = [g.ring.index[v] for v in target.variables]
    return Poly(target, {tuple(e[i] for i in idx): c for e, c in g.terms.items()})


def _fresh(ring: PolyRing, stem: str = "w") -> str:
    name = stem
    k = 0
    while name in ring.index:
        k += 1
        name = f"{stem}{k}"
    return name


def intersect(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    """I ∩ J by eliminating w from w·I + (1 − w)·J."""
    if not _same_space(I.ring, J.ring):
        raise RingMismatchError("ideals in different rings")
    if I.is_zero() or J.is_zero():
        return IdealHandle(I.ring, [])
    w = _fresh(I.ring)
    big = PolyRing((w,) + I.ring.variables, DEGREVLEX, I.ring.field, (1,) + I.ring.weights)
    W = big.var(w)
    gens = [W * g.to_ring(big) for g in I.generators]
    gens += [(big.one() - W) * g.to_ring(big) for g in J.generators]
    res = eliminate(IdealHandle(big, gens), [w], target=I.ring)
    return IdealHandle(I.ring, res.gb())


def ideal_quotient(I: IdealHandle, f: Poly) -> IdealHandle:
    """I : f, computed as (I ∩ (f)) / f."""
    if not f:
        raise ZeroDivisionError("quotient by the zero polynomial")
    f = f.to_ring(I.ring)
    if f.is_constant():
        return I
    inter = intersect(I, IdealHandle(I.ring, [f]))
    return IdealHandle(I.ring, [divide_exact(g, f) for g in inter.generators])


def _homogeneous_weights(I: IdealHandle, f: Poly) -> bool:
    w = I.ring.weights
    return f.is_homogeneous(w) and all(g.is_homogeneous(w) for g in I.generators)


def saturate(I: IdealHandle, f: Poly, method: str = "auto") -> IdealHandle:
    """I : f^∞.

    ``bayer``: one Gröbner basis of I + (w − f) in weighted degrevlex with w
    last, divide out powers of w, substitute w = f.  Needs I and f
    homogeneous.  ``quotient``: iterate I : f until stable.  ``elimination``:
    eliminate w from I + (1 − w f).
    """
    if not f:
        raise ZeroDivisionError("saturation by the zero polynomial")
    f = f.to_ring(I.ring)
    if f.is_constant() or I.is_zero():
        return I
    if method == "auto":
        method = "bayer" if _homogeneous_weights(I, f) else "quotient"
    if method == "bayer":
        return _saturate_bayer(I, f)
    if method == "quotient":
        cur = IdealHandle(I.ring, I.gb())
        while True:
            nxt = ideal_quotient(cur, f)
            if ideal_equal(nxt, cur):
                return IdealHandle(I.ring, cur.gb())
            cur = IdealHandle(I.ring, nxt.gb())
    if method == "elimination":
        w = _fresh(I.ring)
        big = PolyRing((w,) + I.ring.variables, DEGREVLEX, I.ring.field, (1,) + I.ring.weights)
        gens = [g.to_ring(big) for g in I.generators]
        gens.append(big.one() - big.var(w) * f.to_ring(big))
        res = eliminate(IdealHandle(big, gens), [w], target=I.ring)
        return IdealHandle(I.ring, res.gb())
    raise ValueError(f"unknown saturation method {method!r}")


def _saturate_bayer(I: IdealHandle, f: Poly) -> IdealHandle:
    if not _homogeneous_weights(I, f):
        raise ValueError("Bayer saturation needs homogeneous input")
    w = _fresh(I.ring)
    d = sum(a * b for a, b in zip(next(iter(f.terms)), I.ring.weights))
    big = PolyRing(I.ring.variables + (w,), DEGREVLEX, I.ring.field, I.ring.weights + (d,))
    W = big.var(w)
    gens = [g.to_ring(big) for g in I.generators] + [W - f.to_ring(big)]
    gb = groebner_basis(gens, big)
    n = I.ring.nvars
    images = I.ring.gens() + [f]
    from .poly import ring_map_apply

    out = []
    for g in gb:
        m = min(e[n] for e in g.terms)
        if m:
            g = Poly(big, {e[:n] + (e[n] - m,): c for e, c in g.terms.items()})
        h = ring_map_apply(g, images)
        if h:
            out.append(h)
    return IdealHandle(I.ring, out)


def saturate_ideal(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    """I : J^∞ as the intersection of I : g^∞ over generators g of J."""
    result = None
    for g in J.generators:
        S = saturate(I, g)
        result = S if result is None else intersect(result, S)
    return result if result is not None else I


def minimal_generators(I: IdealHandle) -> list[Poly]:
    """A minimal homogeneous generating set, chosen degree by degree from the GB."""
    ring = I.ring
    F = ring.field
    if not all(g.is_homogeneous(ring.weights) for g in I.generators):
        raise ValueError("minimal_generators needs a homogeneous ideal")
    gb = sorted(I.gb(), key=lambda g: (g.total_degree(), ring.sort_key(g.lead_exp())))
    chosen: list[Poly] = []
    for d in sorted({g.total_degree() for g in gb}):
        span = []
        for h in chosen:
            k = d - h.total_degree()
            for e in _exps_of_degree(ring.nvars, k):
                span.append(h.mul_monomial(e))
        for g in (g for g in gb if g.total_degree() == d):
            if not _in_span(g, span, F):
                chosen.append(g.primitive())
                span.append(g)
    return chosen


def _exps_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _exps_of_degree(n - 1, d - a):
            yield (a,) + rest


def _in_span(g: Poly, span: list, F) -> bool:
    from .poly import matrix_rank

    if not span:
        return not g
    monos = sorted({e for f in span + [g] for e in f.terms})
    col = {e: i for i, e in enumerate(monos)}

    def row(f):
        r = [F.zero] * len(monos)
        for e, c in f.terms.items():
            r[col[e]] = c
        return r

    rows = [row(f) for f in span]
    return matrix_rank(rows, F) == matrix_rank(rows + [row(g)], F)
