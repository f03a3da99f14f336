#!/usr/bin/env python3
"""Compare every sc_7 closed form against lattice counts up to --nmax."""

import argparse
from dataclasses import dataclass

from tcores.abacus import sc_t_core_counts
from tcores.arith import is_squarefree
from tcores.sc7 import cor2_dirichlet, cor_counting, cor_one_h, dn_nu, sc7_odd_branches, thm_many_h
from tcores.squares import sc7_via_r3


@dataclass
class SweepConfig:
    nmax: int = 2000


FORMULAS = {
    "four class numbers": (thm_many_h, lambda n: True),
    "weighted H_7": (cor_counting, lambda n: True),
    "single class number": (cor_one_h, lambda n: True),
    "odd three-branch": (sc7_odd_branches, lambda n: n % 2 == 1 and (n + 2) % 7 != 0),
    "Dirichlet sums": (cor2_dirichlet, lambda n: is_squarefree(n + 2)),
    "three squares": (sc7_via_r3, lambda n: True),
}


def main(cfg: SweepConfig) -> int:
    table = sc_t_core_counts(cfg.nmax, 7)
    bad_total = 0
    for name, (fn, domain) in FORMULAS.items():
        ns = [n for n in range(cfg.nmax + 1) if domain(n)]
        bad = [n for n in ns if fn(n) != table[n]]
        bad_total += len(bad)
        print(f"{name:22s} checked {len(ns):5d}  mismatches {len(bad)}{'  first ' + str(bad[:5]) if bad else ''}")
    gaps = [n for n in range(cfg.nmax + 1) if dn_nu(n).domain_gap]
    print(f"domain-gap indices (n + 2 a power of 4): {gaps}")
    return 1 if bad_total else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=SweepConfig.nmax)
    raise SystemExit(main(SweepConfig(**vars(ap.parse_args()))))
