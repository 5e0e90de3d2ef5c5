"""Randomized Gröbner engine self-checks with a configurable size."""

import argparse
import time

from linpres.config import EngineSuiteConfig
from linpres.selfcheck import run_engine_suite

if __name__ == "__main__":
    d = EngineSuiteConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=d.cases)
    ap.add_argument("--seed", type=int, default=d.seed)
    ap.add_argument("--max-degree", type=int, default=d.max_degree)
    ap.add_argument("--max-terms", type=int, default=d.max_terms)
    a = ap.parse_args()
    cfg = EngineSuiteConfig(cases=a.cases, seed=a.seed, max_degree=a.max_degree, max_terms=a.max_terms)
    t0 = time.perf_counter()
    results = run_engine_suite(cfg)
    bad = [r for r in results if not r.ok]
    for r in bad:
        print("FAILED", r)
    print(f"{len(results) - len(bad)}/{len(results)} cases passed in {time.perf_counter() - t0:.1f}s")
    raise SystemExit(1 if bad else 0)
