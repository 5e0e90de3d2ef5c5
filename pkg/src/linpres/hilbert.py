"""Dimension, Hilbert series and the Artinian-reduction CM test."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .groebner import IdealHandle
from .poly import DEGREVLEX, PolyRing, random_linear_forms, ring_map_apply, rref

UNIT_DIM = -1


class SOPNotFound(RuntimeError):
    pass


def _masks(exps):
    return [sum(1 << i for i, a in enumerate(e) if a) for e in exps]


def krull_dimension_of_monomials(exps: list, n: int) -> int:
    """dim k[x]/(monomials) as the size of a maximal independent set."""
    masks = _masks(exps)
    if any(m == 0 for m in masks):
        return UNIT_DIM
    full = (1 << n) - 1
    for k in range(n, -1, -1):
        for S in combinations(range(n), k):
            s = sum(1 << i for i in S)
            if all(m & ~s & full for m in masks):
                return k
    return 0


def dimension_and_height(I: IdealHandle) -> tuple[int, int]:
    """(dim R/I, height I).  The unit ideal reports (-1, nvars)."""
    n = I.ring.nvars
    if I.is_zero():
        return n, 0
    d = krull_dimension_of_monomials(I.leading_exps(), n)
    if d == UNIT_DIM:
        return UNIT_DIM, n
    return d, n - d


# Hilbert series ---------------------------------------------------------------

def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def hilbert_numerator(exps: list, n: int) -> list:
    """Numerator N(T) of the Hilbert series N(T)/(1-T)^n of k[x]/(monomials).

    Pivot recursion N(I) = N(I + (x_v)) + T·N(I : x_v) on the variable that
    occurs in the most generators.
    """
    gens = _minimalize([tuple(e) for e in exps])
    return _trim(_hn(gens, n))


def _hn(gens, n):
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    # base case: pairwise coprime generators
    seen = 0
    coprime = True
    for m in _masks(gens):
        if seen & m:
            coprime = False
            break
        seen |= m
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            f = [0] * (d + 1)
            f[0], f[d] = 1, -1
            out = _pmul(out, f)
        return out
    counts = [0] * n
    for g in gens:
        for i, a in enumerate(g):
            if a:
                counts[i] += 1
    v = max(range(n), key=lambda i: counts[i])
    unit = tuple(1 if i == v else 0 for i in range(n))
    plus = _minimalize([g for g in gens if not g[v]] + [unit])
    colon = _minimalize([tuple(a - 1 if i == v and a else a for i, a in enumerate(g)) for g in gens])
    return _padd(_hn(plus, n), [0] + _hn(colon, n))


@dataclass
class HilbertData:
    numerator: list
    nvars: int
    dim: int
    h_polynomial: list
    multiplicity: int
    function_values: dict = field(default_factory=dict)

    def hilbert_function(self, t: int) -> int:
        if t < 0:
            return 0
        if self.dim <= 0:
            return self.h_polynomial[t] if t < len(self.h_polynomial) else 0
        d = self.dim
        return sum(h * comb(t - k + d - 1, d - 1) for k, h in enumerate(self.h_polynomial) if k <= t)

    def hilbert_polynomial(self, t: int) -> int:
        """Value of the Hilbert polynomial (valid for every integer t)."""
        d = self.dim
        if d <= 0:
            return 0
        total = 0
        for k, h in enumerate(self.h_polynomial):
            # binomial C(t-k+d-1, d-1) as a polynomial in t
            m = t - k + d - 1
            num = 1
            for j in range(d - 1):
                num *= m - j
            den = 1
            for j in range(1, d):
                den *= j
            total += h * num // den
        return total

    @property
    def h_degree(self) -> int:
        return len(self.h_polynomial) - 1

    def as_dict(self) -> dict:
        return {
            "numerator": self.numerator,
            "dim": self.dim,
            "h_polynomial": self.h_polynomial,
            "multiplicity": self.multiplicity,
            "function_values": {str(k): v for k, v in sorted(self.function_values.items())},
        }


def hilbert_data_from_exps(exps: list, n: int, upto: int | None = None) -> HilbertData:
    num = hilbert_numerator(exps, n)
    if num == [0]:
        return HilbertData([0], n, UNIT_DIM, [0], 0, {})
    h = list(num)
    k = 0
    while k < n:
        # divide by (1 - T) while T = 1 is a root
        if sum(h) != 0:
            break
        q = []
        acc = 0
        for c in h[:-1]:
            acc += c
            q.append(acc)
        h = _trim(q) if q else [0]
        k += 1
    dim = n - k
    data = HilbertData(num, n, dim, h, sum(h))
    upto = max(6, 2 * n) if upto is None else upto
    data.function_values = {t: data.hilbert_function(t) for t in range(upto + 1)}
    return data


def hilbert_series(I: IdealHandle, upto: int | None = None) -> HilbertData:
    """Hilbert data of R/I for a standard-graded homogeneous ideal."""
    ring = I.ring
    if any(w != 1 for w in ring.weights):
        raise ValueError("hilbert_series needs the standard grading")
    if not all(g.is_homogeneous() for g in I.generators):
        raise ValueError("hilbert_series needs a homogeneous ideal")
    return hilbert_data_from_exps(I.leading_exps() if not I.is_zero() else [], ring.nvars, upto)


def _monomials_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - a):
            yield (a,) + rest


def graded_piece_dimension(I: IdealHandle, d: int, quotient: bool = False) -> int:
    """dim_k I_d (or dim_k (R/I)_d with ``quotient=True``) by counting
    standard monomials of the leading-term ideal."""
    if d < 0:
        return 0
    n = I.ring.nvars
    lead = I.leading_exps() if not I.is_zero() else []
    standard = 0
    total = 0
    for m in _monomials_of_degree(n, d):
        total += 1
        if not any(all(a <= b for a, b in zip(g, m)) for g in lead):
            standard += 1
    return standard if quotient else total - standard


# Cohen–Macaulay test -------------------------------------------------------------

@dataclass
class CMVerdict:
    verdict: str  # "cm" | "not_cm"
    length: int
    multiplicity: int
    dim: int
    theta: list
    seed: int
    attempts: int
    top_degree: int = 0

    @property
    def is_cm(self) -> bool:
        return self.verdict == "cm"

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "length": self.length,
            "multiplicity": self.multiplicity,
            "dim": self.dim,
            "theta": [str(t) for t in self.theta],
            "seed": self.seed,
            "attempts": self.attempts,
            "top_degree": self.top_degree,
        }


def _cut_by_linear_forms(I: IdealHandle, theta: list) -> IdealHandle | None:
    """R/(I, θ) presented in the variables left free by θ; None if θ is dependent."""
    ring = I.ring
    F = ring.field
    n = ring.nvars
    rows = []
    for t in theta:
        row = [F.zero] * n
        for e, c in t.terms.items():
            row[e.index(1)] = c
        rows.append(row)
    R, pivots = rref(rows, F)
    if len(pivots) < len(theta):
        return None
    free = [v for v in range(n) if v not in pivots]
    small = PolyRing(tuple(ring.variables[v] for v in free), DEGREVLEX, F)
    gens = small.gens()
    images = [None] * n
    for k, v in enumerate(free):
        images[v] = gens[k]
    for row, pc in zip(R, pivots):
        img = small.zero()
        for k, v in enumerate(free):
            if row[v]:
                img = img - gens[k].scale(row[v])
        images[pc] = img
    return IdealHandle(small, [ring_map_apply(g, images) for g in I.generators])


def artinian_cm_test(I: IdealHandle, seed: int = 0, max_retries: int = 5) -> CMVerdict:
    """Decide whether R/I is Cohen–Macaulay.

    Cut by dim(R/I) random linear forms; when they form a system of
    parameters, R/I is CM iff the length of the Artinian reduction equals
    the multiplicity of R/I.
    """
    hs = hilbert_series(I)
    d = hs.dim
    if d < 1:
        raise ValueError("artinian_cm_test needs dim R/I >= 1")
    e = hs.multiplicity
    for attempt in range(max_retries + 1):
        s = seed + attempt
        theta = random_linear_forms(I.ring, d, s)
        cut = _cut_by_linear_forms(I, theta)
        if cut is None:
            continue
        hc = hilbert_series(cut)
        if hc.dim != 0:
            continue
        length = sum(hc.h_polynomial)
        top = len(hc.h_polynomial) - 1
        return CMVerdict("cm" if length == e else "not_cm", length, e, d, theta, s, attempt + 1, top)
    raise SOPNotFound(f"no system of parameters after {max_retries + 1} attempts")
