#!/usr/bin/env python3
"""Where the phi-image genus claims hold and where they break, n <= --nmax."""

import argparse
from collections import Counter
from dataclasses import dataclass

from tcores.quadforms import verify_theorem_main

CLAIMS = (
    "single_genus",
    "non_principal",
    "seven_primitive",
    "two_totally_imprimitive",
    "fibers_equal",
    "fiber_matches_statement",
    "fiber_matches_proof",
    "surjective",
)


@dataclass
class ReportConfig:
    nmax: int = 300
    show: int = 8


def main(cfg: ReportConfig) -> None:
    failures: dict[str, list[int]] = {c: [] for c in CLAIMS}
    nonvacuous = 0
    fiber_shapes = Counter()
    for n in range(cfg.nmax + 1):
        rep = verify_theorem_main(n)
        if rep.vacuous:
            continue
        nonvacuous += 1
        fiber_shapes[len(rep.genus_hashes)] += 1
        for c in CLAIMS:
            if not getattr(rep, c):
                failures[c].append(n)
    print(f"n <= {cfg.nmax}: {nonvacuous} with sc_7(n) > 0")
    for c, ns in failures.items():
        print(f"  {c:26s} fails at {len(ns):3d} n  {ns[: cfg.show]}")
    print(f"  genera hit per n: {dict(sorted(fiber_shapes.items()))}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=ReportConfig.nmax)
    ap.add_argument("--show", type=int, default=ReportConfig.show)
    main(ReportConfig(**vars(ap.parse_args())))
