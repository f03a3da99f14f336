#!/usr/bin/env python3
"""The 27 sc_9 formula as stated vs. with 3 sigma(k) in the n = 2 (mod 4) branch."""

import argparse

from tcores.abacus import sc_t_core_counts
from tcores.othercores import CURVES, reduction_type, sc9_closed
from tcores.squares import InconsistencyError


def main(nmax: int) -> None:
    table = sc_t_core_counts(nmax, 9)
    for label, E in CURVES.items():
        kinds = {p: reduction_type(E, p) for p in E.bad_primes()}
        print(f"{label}: bad primes {kinds}")
    stated, corrected = [], []
    for n in range(nmax + 1):
        try:
            if sc9_closed(n) != table[n]:
                stated.append(n)
        except InconsistencyError:
            stated.append(n)
        if sc9_closed(n, corrected=True) != table[n]:
            corrected.append(n)
    print(f"as stated: {len(stated)} mismatches, residues mod 4 {sorted({n % 4 for n in stated})}")
    print(f"3 sigma(k) branch: {len(corrected)} mismatches")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=400)
    main(ap.parse_args().nmax)
