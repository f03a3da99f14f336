"""Command line: counts, identity sweeps, the phi pipeline, and series dumps.

Exit status: 0 when every checked instance passes, 1 when any fails,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import partitions as P
from .abacus import sc_t_core_counts, t_core_counts
from .arith import is_fundamental, is_squarefree
from .classnum import H, H7, c_r_delta
from .othercores import (
    c2_closed,
    c5_closed,
    sc3_closed,
    sc9_closed,
)
from .qseries import (
    C2_QUOTIENT,
    SC3_QUOTIENT,
    central_rhs,
    eta_expand,
    h12_series,
    hseries,
    sc7_series,
    theta,
    theta_cubed,
    verify_central_identity,
    verify_hecke_eigen,
    verify_theta_cubed,
    verify_three_square_coefficients,
)
from .squares import gauss_r3, r3, sc7_via_r3, sc7_via_r3_hecke

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    identity: str | None = None
    n_range: range | None = None
    t: int | None = None
    sc: bool = False
    method: str = "lattice"
    precision: int | None = None
    fmt: str = "csv"
    jobs: int = 1
    oracle_bound: int = P.ORACLE_BOUND
    series: str | None = None


@dataclass
class Record:
    id: str
    n: str
    lhs: str
    rhs: str
    passed: bool
    note: str = ""

    def row(self) -> dict:
        return {"id": self.id, "n": self.n, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed, "note": self.note}


def _rec(ident: str, n, lhs, rhs, note: str = "", passed: bool | None = None) -> Record:
    ok = (lhs == rhs) if passed is None else passed
    return Record(ident, str(n), str(lhs), str(rhs), bool(ok), note)


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    """fn over items, results in input order."""
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _flatten(chunks: Iterable) -> list[Record]:
    out = []
    for c in chunks:
        if isinstance(c, Record):
            out.append(c)
        elif c:
            out.extend(c)
    return out


# --- identity runners ---------------------------------------------------------
# each takes (cfg) and returns records; ranges default per identity


def _sc7_table(nmax: int) -> list[int]:
    return sc_t_core_counts(max(nmax, 0), 7)


def _run_thm11(cfg):
    from .sc7 import c4_class_number

    ns = [n for n in cfg.n_range if is_squarefree(8 * n + 5)]
    c4 = t_core_counts(max(cfg.n_range, default=0), 4)
    return _pmap(lambda n: _rec("thm1.1", n, c4_class_number(n), c4[n]), ns, cfg.jobs)


def _run_thm12(cfg):
    from .sc7 import sc7_odd_branches

    tab = _sc7_table(max(cfg.n_range, default=0))
    ns = [n for n in cfg.n_range if n % 2 == 1 and (n + 2) % 7]
    return _pmap(lambda n: _rec("thm1.2", n, sc7_odd_branches(n), tab[n]), ns, cfg.jobs)


def _sc7_sweep(ident: str, fn: Callable, note: Callable | None = None):
    def run(cfg):
        tab = _sc7_table(max(cfg.n_range, default=0))
        return _pmap(
            lambda n: _rec(ident, n, fn(n), tab[n], note(n) if note else ""),
            list(cfg.n_range),
            cfg.jobs,
        )

    return run


def _gap_note(n: int) -> str:
    from .sc7 import dn_nu

    return "domain gap: n + 2 is a power of 4" if n >= 0 and dn_nu(n).domain_gap else ""


def _run_cor15(cfg):
    from .sc7 import cor2_dirichlet

    tab = _sc7_table(max(cfg.n_range, default=0))
    ns = [n for n in cfg.n_range if is_squarefree(n + 2)]
    return _pmap(lambda n: _rec("cor1.5", n, cor2_dirichlet(n), tab[n]), ns, cfg.jobs)


LIFT_BOUND = 100_000
LIFT_FS = (1, 3, 5, 9, 11, 13, 15)


def _run_cor16(cfg):
    from .sc7 import cor3_lift, lifted_index

    grid = []
    for n in cfg.n_range:
        if not is_squarefree(n + 2):
            continue
        for ell in (0, 1):
            for r in (0, 1):
                for f in LIFT_FS:
                    m = lifted_index(n, ell, r, f)
                    if m <= LIFT_BOUND:
                        grid.append((n, ell, r, f, m))
    tab = _sc7_table(max((g[-1] for g in grid), default=0))
    return [
        _rec("cor1.6", f"{n}:l={ell}:r={r}:f={f}", cor3_lift(n, ell, r, f), tab[m], f"index {m}")
        for n, ell, r, f, m in grid
    ]


def _run_lemma22(cfg):
    from .sc7 import dn_nu

    tab = _sc7_table(max(cfg.n_range, default=0))
    out = []
    for n in cfg.n_range:
        out.append(_rec("lemma2.2", n, sc7_via_r3(n), tab[n], "part 1"))
        if (n + 2) % 7 == 0:
            out.append(_rec("lemma2.2", n, sc7_via_r3_hecke(n, dn_nu(n).D), tab[n], "part 2"))
    return out


def _run_eq21(cfg):
    N = cfg.precision
    reps = [verify_central_identity(N), verify_three_square_coefficients(N)]
    return [
        _rec("eq2.1", N, "ok" if r.passed else f"mismatch at {r.first_mismatch}", "ok", r.name) for r in reps
    ]


def _run_eq22(cfg):
    N = cfg.precision
    reps = [verify_hecke_eigen(p, N) for p in (3, 5, 7)] + [verify_theta_cubed(2 * N)]
    return [
        _rec("eq2.2", r.precision, "ok" if r.passed else f"mismatch at {r.first_mismatch}", "ok", r.name)
        for r in reps
    ]


def _run_gauss(cfg):
    ms = [m for m in cfg.n_range if m >= 1]
    return _pmap(lambda m: _rec("gauss_r3", m, r3(m), gauss_r3(m)), ms, cfg.jobs)


def _run_thm17(cfg):
    from .quadforms import verify_theorem_main

    def one(n):
        rep = verify_theorem_main(n)
        fibers = sorted(set(rep.fibers.values()))
        note = (
            f"genus={'|'.join(rep.genus_hashes)};classes={rep.class_count};images={rep.image_count};"
            f"r={rep.r_statement};r_genus={rep.r_genus};proof_fiber={rep.proof_fiber};"
            f"single_genus={rep.single_genus};non_principal={rep.non_principal};"
            f"7prim={rep.seven_primitive};2timp={rep.two_totally_imprimitive}"
        )
        if rep.vacuous:
            note = "vacuous"
        return _rec("thm1.7", n, ",".join(map(str, fibers)), rep.expected_fiber, note, rep.passed)

    return _pmap(one, list(cfg.n_range), cfg.jobs)


def _run_eq11(cfg):
    from .sc7 import progression_identity

    out = []
    for n in cfg.n_range:
        res = progression_identity(n)
        note = "" if res.hypotheses else "hypothesis not met; no claim"
        out.append(_rec("eq1.1", n, res.lhs, res.rhs, note, res.holds))
    return out


def _run_lemma31(cfg):
    from .sc7 import sc7_lattice

    out = []
    for n in cfg.n_range:
        for which, base in (("two", 4), ("seven", 49)):
            for ell in (1, 2):
                m = (n + 2) * base**ell - 2
                if m > LIFT_BOUND:
                    continue
                factor = 7**ell if which == "seven" else 1
                lhs = sc7_lattice(m)
                out.append(_rec("lemma3.1", f"{n}:{which}:l={ell}", lhs, factor * sc7_lattice(n), f"index {m}"))
    return out


def _run_lemma32(cfg):
    Ds = [D for D in cfg.n_range if D >= 1 and D % 4 in (0, 3)]
    return [_rec("lemma3.2", D, H7(D), H(D) - H(Fraction(D, 49))) for D in Ds]


def _run_lemma33(cfg):
    out = []
    for d in cfg.n_range:
        if d < 3 or not is_fundamental(-d):
            continue
        for r in (1, 2, 3):
            c = c_r_delta(r, d)
            out.append(_rec("lemma3.3", f"{d}:r={r}", c.defining_sum, c.closed_form))
    return out


def _run_sc9(cfg):
    from .squares import InconsistencyError

    tab = sc_t_core_counts(max(cfg.n_range, default=0), 9)
    out = []
    for n in cfg.n_range:
        try:
            got = sc9_closed(n)
        except InconsistencyError as exc:
            got = f"inconsistent ({exc})"
        note = f"3 sigma(k) variant gives {sc9_closed(n, corrected=True)}" if n % 4 == 2 else ""
        out.append(_rec("sc9", n, got, tab[n], note))
    return out


def _run_c5(cfg):
    tab = t_core_counts(max(cfg.n_range, default=0), 5)
    return [_rec("c5", n, c5_closed(n), tab[n]) for n in cfg.n_range]


def _run_sc3c2(cfg):
    top = max(cfg.n_range, default=0)
    c2, s3 = eta_expand(C2_QUOTIENT, top), eta_expand(SC3_QUOTIENT, top)
    c2l, s3l = t_core_counts(top, 2), sc_t_core_counts(top, 3)
    out = []
    for n in cfg.n_range:
        out.append(_rec("sc3c2", f"c2:{n}", c2_closed(n), c2[n], "", c2_closed(n) == c2[n] == c2l[n]))
        out.append(_rec("sc3c2", f"sc3:{n}", sc3_closed(n), s3[n], "", sc3_closed(n) == s3[n] == s3l[n]))
    return out


@dataclass(frozen=True)
class Identity:
    id: str
    summary: str
    runner: Callable[[RunConfig], list]
    default_range: tuple[int, int] | None = None
    default_precision: int | None = None


def _registry() -> dict[str, Identity]:
    from .sc7 import cor_counting, cor_one_h, thm_many_h

    entries = [
        Identity("thm1.1", "c_4(n) = H(32n+20)/2 for squarefree 8n+5", _run_thm11, (0, 1000)),
        Identity("thm1.2", "three-branch class-number formula for odd n", _run_thm12, (0, 2000)),
        Identity("thm1.3", "sc_7 as four class numbers", _sc7_sweep("thm1.3", thm_many_h), (0, 2000)),
        Identity("cor1.4", "sc_7(n) = nu_n H_7(D_n)", _sc7_sweep("cor1.4", cor_counting, _gap_note), (0, 2000)),
        Identity("cor1.5", "Dirichlet character sums for squarefree n+2", _run_cor15, (0, 2000)),
        Identity("cor1.6", "lifts by 4^l f^2 49^r", _run_cor16, (0, 50)),
        Identity("cor2.3", "single class-number case split", _sc7_sweep("cor2.3", cor_one_h), (0, 2000)),
        Identity("lemma2.2", "sc_7 from r_3", _run_lemma22, (0, 2000)),
        Identity("eq2.1", "S = H_{1,2}|(U_14 - U_2 V_7)/4", _run_eq21, default_precision=500),
        Identity("eq2.2", "Theta^3 is a T(p^2) eigenform; Theta^3 = 12 H_{1,2}|U_2", _run_eq22, default_precision=1000),
        Identity("gauss_r3", "r_3 from class numbers", _run_gauss, (1, 20000)),
        Identity("thm1.7", "phi image: one genus, equal fibers", _run_thm17, (0, 300)),
        Identity("eq1.1", "2 sc_7(8n+1) = c_4(7n+2)", _run_eq11, (0, 500)),
        Identity("lemma3.1", "sc_7 under n+2 -> 4^l (n+2) and 49^l (n+2)", _run_lemma31, (0, 50)),
        Identity("lemma3.2", "H_7(D) = H(D) - H(D/49)", _run_lemma32, (1, 20000)),
        Identity("lemma3.3", "7-power divisor-sum differences", _run_lemma33, (3, 500)),
        Identity("sc9", "27 sc_9(n) via elliptic curves", _run_sc9, (0, 400)),
        Identity("c5", "c_5(n) = sigma_5(n+1)", _run_c5, (0, 500)),
        Identity("sc3c2", "c_2 and sc_3 indicators vs eta quotients", _run_sc3c2, (0, 2000)),
    ]
    return {e.id: e for e in entries}


REGISTRY = _registry()


# --- counts -------------------------------------------------------------------


def _formula(t: int, sc: bool) -> Callable[[int], object]:
    from .sc7 import cor_counting, c4_class_number

    if sc and t == 7:
        return cor_counting
    if sc and t == 3:
        return sc3_closed
    if sc and t == 9:
        return lambda n: sc9_closed(n, corrected=True)
    if not sc and t == 2:
        return c2_closed
    if not sc and t == 5:
        return c5_closed
    if not sc and t == 4:
        return lambda n: c4_class_number(n) if is_squarefree(8 * n + 5) else ""
    kind = "self-conjugate " if sc else ""
    raise UsageError(f"no closed form in scope for {kind}{t}-cores")


def count_rows(cfg: RunConfig) -> list[dict]:
    t, ns = cfg.t, list(cfg.n_range)
    top = max(ns, default=0)
    if cfg.method == "brute":
        if top > cfg.oracle_bound:
            raise UsageError(f"brute force limited to n <= {cfg.oracle_bound} (see --oracle-bound)")
        fn = P.count_sc_t_cores_brute if cfg.sc else P.count_t_cores_brute
        vals = _pmap(lambda n: fn(n, t, bound=cfg.oracle_bound), ns, cfg.jobs)
    elif cfg.method == "lattice":
        tab = sc_t_core_counts(top, t) if cfg.sc else t_core_counts(top, t)
        vals = [tab[n] for n in ns]
    else:
        fn = _formula(t, cfg.sc)
        vals = _pmap(fn, ns, cfg.jobs)
    return [{"n": n, "count": str(v)} for n, v in zip(ns, vals)]


# --- series -------------------------------------------------------------------


def _series(name: str, N: int):
    table = {
        "theta": lambda: theta(N),
        "theta3": lambda: theta_cubed(N),
        "H": lambda: hseries(N),
        "H12": lambda: h12_series(hseries(2 * N)),
        "S": lambda: sc7_series(N),
        "central": lambda: central_rhs(hseries(28 * N)),
        "c2": lambda: eta_expand(C2_QUOTIENT, N),
        "sc3": lambda: eta_expand(SC3_QUOTIENT, N),
    }
    if name not in table:
        raise UsageError(f"unknown series {name!r}; choose from {sorted(table)}")
    return table[name]()


SERIES_NAMES = ("theta", "theta3", "H", "H12", "S", "central", "c2", "sc3")


# --- output -------------------------------------------------------------------


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1, sort_keys=False) + "\n"
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(
        buf,
        fieldnames=list(rows[0]),
        delimiter="\t" if fmt == "tsv" else ",",
        lineterminator="\n",
    )
    writer.writeheader()
    for r in rows:
        writer.writerow(r)
    return buf.getvalue()


def parse_range(text: str) -> range:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B") from None
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return range(lo, hi + 1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tcores", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("csv", "json", "tsv"), default="csv")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--oracle-bound", type=int, default=P.ORACLE_BOUND)
    sub = ap.add_subparsers(dest="subcommand", required=True)

    c = sub.add_parser("count", parents=[common], help="c_t(n) or sc_t(n) over a range")
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--sc", action="store_true", help="self-conjugate cores")
    c.add_argument("--method", choices=("brute", "lattice", "formula"), default="lattice")
    c.add_argument("--range", dest="n_range", default=None)
    c.add_argument("range_pos", nargs="?", metavar="A..B")

    v = sub.add_parser("verify", parents=[common], help="check one registered identity")
    v.add_argument("identity")
    v.add_argument("--range", dest="n_range", default=None)
    v.add_argument("--precision", type=int, default=None)

    p = sub.add_parser("phi", parents=[common], help="the phi pipeline for every self-conjugate 7-core of n")
    p.add_argument("n", type=int)

    t = sub.add_parser("table", parents=[common], help="dump a q-series as exponent<TAB>num/den")
    t.add_argument("series", choices=SERIES_NAMES)
    t.add_argument("--precision", type=int, default=50)

    sub.add_parser("list", parents=[common], help="registered identity ids")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.subcommand, fmt=ns.fmt, jobs=max(1, ns.jobs), oracle_bound=ns.oracle_bound)
    if ns.subcommand == "count":
        text = ns.n_range or ns.range_pos
        if text is None:
            raise UsageError("count needs a range A..B")
        cfg.t, cfg.sc, cfg.method, cfg.n_range = ns.t, ns.sc, ns.method, parse_range(text)
        if cfg.t < 1 or cfg.n_range.start < 0:
            raise UsageError("need t >= 1 and n >= 0")
    elif ns.subcommand == "verify":
        if ns.identity not in REGISTRY:
            raise UsageError(f"unknown identity {ns.identity!r}; known: {', '.join(REGISTRY)}")
        ident = REGISTRY[ns.identity]
        cfg.identity = ident.id
        if ident.default_precision is not None:
            cfg.precision = ns.precision if ns.precision is not None else ident.default_precision
            if cfg.precision < 12:
                raise UsageError("precision must be at least 12")
        else:
            cfg.n_range = parse_range(ns.n_range) if ns.n_range else range(ident.default_range[0], ident.default_range[1] + 1)
            if cfg.n_range.start < 0:
                raise UsageError("ranges start at 0")
    elif ns.subcommand == "phi":
        if ns.n < 0:
            raise UsageError("n must be non-negative")
        cfg.n_range = range(ns.n, ns.n + 1)
    elif ns.subcommand == "table":
        cfg.series, cfg.precision = ns.series, ns.precision
    return cfg


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if cfg.subcommand == "count":
        out.write(render(count_rows(cfg), cfg.fmt))
        return EXIT_OK
    if cfg.subcommand == "verify":
        records = _flatten(REGISTRY[cfg.identity].runner(cfg))
        out.write(render([r.row() for r in records], cfg.fmt))
        failed = sum(not r.passed for r in records)
        err.write(f"{cfg.identity}: {len(records) - failed}/{len(records)} passed\n")
        return EXIT_FAIL if failed else EXIT_OK
    if cfg.subcommand == "phi":
        from .quadforms import phi_records

        rows = [
            {
                "partition": " ".join(map(str, r.partition)),
                "abacus": " ".join(map(str, r.abacus)),
                "list": " ".join(map(str, r.residue_list)),
                "triple": " ".join(map(str, r.triple)),
                "form": str(r.form),
                "disc": r.form.disc,
            }
            for r in phi_records(cfg.n_range.start)
        ]
        out.write(render(rows, cfg.fmt))
        return EXIT_OK
    if cfg.subcommand == "table":
        out.write(_series(cfg.series, cfg.precision).dump())
        return EXIT_OK
    if cfg.subcommand == "list":
        rows = [{"id": e.id, "summary": e.summary} for e in REGISTRY.values()]
        out.write(render(rows, cfg.fmt))
        return EXIT_OK
    raise UsageError(f"unknown subcommand {cfg.subcommand!r}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return run(config_from_args(ns))
    except UsageError as exc:
        sys.stderr.write(f"tcores: error: {exc}\n")
        return EXIT_USAGE
    except P.OracleBoundError as exc:
        sys.stderr.write(f"tcores: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
