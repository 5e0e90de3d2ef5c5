"""Tabulate the one-x sequences: fiber equations, h-vector and the size
of the Rees ideal against its symmetric part."""

import argparse

from linpres.families import sequences_with, sequence_matrix
from linpres.invariants import Instance, fiber_type_check, reduction_number_report


def main(nmin: int, nmax: int):
    for n in range(nmin, nmax + 1):
        for w in sequences_with(n, xs=1):
            inst = Instance(sequence_matrix(w))
            rr = reduction_number_report(inst)
            ft = fiber_type_check(inst)
            print(f"{w:<8} n={n}  u={inst.chaos.u}  fiber gb={len(inst.fiber.gb()):>2}  "
                  f"h={rr.h_polynomial}  r={rr.reduction_number}  rees gb={len(inst.rees.gb()):>2}  "
                  f"fiber type={ft.fiber_type}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmin", type=int, default=4)
    ap.add_argument("--nmax", type=int, default=6)
    a = ap.parse_args()
    main(a.nmin, a.nmax)
