"""Scan small line arrangements: concurrency, u, and the general reduction
number, with the multiplicity identities on the degenerate ones."""

import argparse
from collections import Counter
from itertools import combinations, product

from linpres.families import degenerate_arrangement_check, xyz_ring


def lines(bound: int):
    seen = []
    for v in product(range(-bound, bound + 1), repeat=3):
        if any(v) and next(t for t in v if t) > 0:
            seen.append(v)
    return seen


def main(n: int, bound: int, limit: int, seed: int):
    R = xyz_ring()
    x, y, z = R.gens()
    form = lambda v: x.scale(v[0]) + y.scale(v[1]) + z.scale(v[2])
    base = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    pool = [v for v in lines(bound) if v not in base]
    stats = Counter()
    for extra in combinations(pool, n - 3):
        if stats["total"] >= limit:
            break
        try:
            rep = degenerate_arrangement_check([form(v) for v in base + list(extra)], seed)
        except ValueError:
            stats["skipped"] += 1
            continue
        stats["total"] += 1
        stats["degenerate" if rep.concurrent else "general"] += 1
        stats[f"u={rep.u} r={rep.reduction_number}"] += 1
        if not rep.agree:
            stats["DISAGREE"] += 1
            print("disagreement:", base + list(extra), rep.as_dict())
    for k, v in sorted(stats.items()):
        print(f"{k:<16} {v}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lines", type=int, default=5, help="number of lines, x, y, z included")
    ap.add_argument("--bound", type=int, default=1, help="coefficient bound")
    ap.add_argument("--limit", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    main(a.lines, a.bound, a.limit, a.seed)
