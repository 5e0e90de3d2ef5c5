"""Run the fixture corpus and print a per-fixture line plus a tally."""

import argparse
import time
from collections import Counter

from linpres.config import SuiteConfig
from linpres.suite import fixture_corpus, run_fixture


def main(cfg: SuiteConfig) -> int:
    tally = Counter()
    for fx in fixture_corpus(cfg.level):
        t0 = time.perf_counter()
        results = run_fixture(fx)
        failed = [name for name, ok in results if not ok]
        tally["pass"] += len(results) - len(failed)
        tally["fail"] += len(failed)
        if cfg.verbose or failed:
            tags = ",".join(sorted(fx.tags)) or "-"
            print(f"{fx.name:<24} n={fx.n}  {tags:<22} {len(results):>3} checks  "
                  f"{time.perf_counter() - t0:5.2f}s  {'FAILED ' + ', '.join(failed) if failed else ''}")
    print(f"{tally['pass']} passed, {tally['fail']} failed")
    return 1 if tally["fail"] else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--level", choices=["fast", "full"], default="fast")
    ap.add_argument("--verbose", action="store_true")
    a = ap.parse_args()
    raise SystemExit(main(SuiteConfig(level=a.level, verbose=a.verbose)))
