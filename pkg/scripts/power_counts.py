"""mu(I^t) next to the fiber Hilbert function and the ambient count
binom(t(n-1)+2, 2), for every sequence of a given length."""

import argparse

from linpres.families import sequence_matrix, sequences_with
from linpres.invariants import Instance, power_generator_counts


def main(n: int, upto: int):
    print(f"{'seq':<8} " + "  ".join(f"t={t}: mu/hf/amb" for t in range(1, upto + 1)))
    for w in sequences_with(n):
        rows = power_generator_counts(Instance(sequence_matrix(w)), upto)
        cells = "  ".join(f"{r['mu_power']:>4}/{r['fiber_hf']:>3}/{r['ambient']:>3}" for r in rows)
        flag = "" if all(r["mu_power"] == r["fiber_hf"] for r in rows) else "  MISMATCH"
        print(f"{w:<8} {cells}{flag}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=5)
    ap.add_argument("--upto", type=int, default=3)
    a = ap.parse_args()
    main(a.n, a.upto)
