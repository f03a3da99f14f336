#!/usr/bin/env python3
"""Witnesses that sigma / sigma_5 at 3n + 10 is not constant on a progression."""

import argparse

from tcores.othercores import sigma5_nonconstancy_probe


def main(M: int, m: int, bound: int) -> None:
    rep = sigma5_nonconstancy_probe(M, m, bound=bound)
    for ell, lim in rep.limits.items():
        ws = [w for w in rep.witnesses if w.ell == ell]
        print(f"ell={ell:3d} limit {float(lim):.6f}  witnesses {len(ws)}  first n {[w.n for w in ws[:4]]}")
    print(f"distinct limits {rep.distinct_limits}; closed form exact on all witnesses: {rep.formula_holds}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--M", type=int, default=1)
    ap.add_argument("--m", type=int, default=0)
    ap.add_argument("--bound", type=int, default=10_000)
    a = ap.parse_args()
    main(a.M, a.m, a.bound)
