"""Randomized self-checks of the Gröbner engine and the derived ideal operations."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .config import EngineSuiteConfig
from .groebner import (
    IdealHandle,
    ideal_contains,
    ideal_equal,
    ideal_quotient,
    intersect,
    is_groebner,
    saturate,
)
from .poly import Poly, polyring


@dataclass
class CaseResult:
    index: int
    nvars: int
    certificate: bool
    unique: bool
    saturation: bool
    intersection: bool

    @property
    def ok(self) -> bool:
        return self.certificate and self.unique and self.saturation and self.intersection


def _random_poly(rng, ring, cfg: EngineSuiteConfig, homogeneous: bool) -> Poly:
    n = ring.nvars
    d = rng.randint(1, cfg.max_degree)
    terms = []
    for _ in range(rng.randint(1, cfg.max_terms)):
        deg = d if homogeneous else rng.randint(0, d)
        e = [0] * n
        for _ in range(deg):
            e[rng.randrange(n)] += 1
        terms.append((tuple(e), rng.randint(-cfg.coeff_bound, cfg.coeff_bound) or 1))
    f = Poly.from_terms(ring, terms)
    return f if f else ring.gens()[0]


def _recombine(rng, gens, ring):
    """Same ideal, different generators: a unitriangular mix plus multiples."""
    out = list(gens)
    for i in range(len(out)):
        for j in range(i):
            c = rng.randint(-2, 2)
            if c:
                m = ring.gens()[rng.randrange(ring.nvars)] if rng.random() < 0.5 else ring.one()
                out[i] = out[i] + out[j] * m.scale(c)
    out = [g.scale(rng.choice([1, -1, 2, 3])) for g in out]
    rng.shuffle(out)
    return out


def run_case(index: int, cfg: EngineSuiteConfig) -> CaseResult:
    rng = random.Random(cfg.seed * 1000003 + index)
    n = rng.choice(cfg.nvars)
    names = "abcd"[:n]
    ring = polyring(list(names))
    homogeneous = rng.random() < 0.6
    gens = [_random_poly(rng, ring, cfg, homogeneous) for _ in range(rng.randint(1, 3))]
    I = IdealHandle(ring, gens)
    gb = I.gb()
    cert = is_groebner(gb)
    unique = ideal_equal(I, IdealHandle(ring, _recombine(rng, gens, ring)))
    f = ring.gens()[rng.randrange(n)]
    if rng.random() < 0.5:
        f = f + ring.gens()[rng.randrange(n)]
    S = saturate(I, f)
    sat_ok = ideal_equal(saturate(S, f), S) and ideal_equal(ideal_quotient(S, f), S)
    other = IdealHandle(ring, [_random_poly(rng, ring, cfg, homogeneous) for _ in range(rng.randint(1, 2))])
    K = intersect(I, other)
    inter_ok = ideal_contains(I, K) and ideal_contains(other, K)
    return CaseResult(index, n, cert, unique, sat_ok, inter_ok)


def run_engine_suite(cfg: EngineSuiteConfig | None = None) -> list[CaseResult]:
    cfg = cfg or EngineSuiteConfig()
    return [run_case(i, cfg) for i in range(cfg.cases)]
