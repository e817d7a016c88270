"""Command-line front end: compute, roots, verify, identities, branches, report.

Exit status is 0 when every verdict passes, 1 when some verdict fails (its
witness is printed) and 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import branches, identities, recurrences, verify
from .poly import BiPoly
from .realroot import isolate_roots

MAX_INDEX = 200
FAMILIES = ("P", "S", "Ptilde", "Phat", "G", "K", "F", "Fhat", "H")
_MIN_INDEX = {"S": 4}
_VARIABLE = {"G": "x", "K": "x"}
SUITES = ("realroot", "interlace", "ulc", "identities", "location", "crossings")
LOCATION_TS = (Fraction(-1, 2), Fraction(-1), Fraction(-3), Fraction(-10))
DEFAULT_WIDTH = Fraction(1, 10**10)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    fmt: str
    order: int
    width: Fraction
    jobs: int
    cache: str | None
    timing: bool = True
    extra: dict = field(default_factory=dict)

    def echo(self) -> dict:
        out = {"command": self.command, "format": self.fmt, "order": self.order,
               "width": f"{self.width.numerator}/{self.width.denominator}", "jobs": self.jobs,
               "cache": self.cache}
        out.update(self.extra)
        return out


@dataclass
class SuiteReport:
    verdicts: list[verify.Verdict]
    wall_ms: float
    config: dict
    notes: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(v.passed for v in self.verdicts)

    @property
    def failed(self) -> int:
        return len(self.verdicts) - self.passed

    def summary(self, timing: bool = True) -> dict:
        out: dict[str, Any] = {"summary": {"total": len(self.verdicts), "passed": self.passed,
                                           "failed": self.failed}}
        if timing:
            out["wall_ms"] = round(self.wall_ms, 1)
        out["config"] = self.config
        return out


# -- argument parsing ------------------------------------------------------------


def parse_range(text: str, family: str = "P") -> range:
    """'7' or '4..9' (inclusive) within the supported index bounds."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected N or A..B") from None
    low = _MIN_INDEX.get(family, 1)
    if lo > hi or lo < low or hi > MAX_INDEX:
        raise UsageError(f"range {text!r} outside {low}..{MAX_INDEX} for {family}")
    return range(lo, hi + 1)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return k


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # the same flags are accepted before or after the subcommand
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("json", "csv", "table"), default=d(None))
    parser.add_argument("--order", type=_positive_int, default=d(15), help="series order")
    parser.add_argument("--width", type=_fraction, default=d(DEFAULT_WIDTH), help="isolation width")
    parser.add_argument("--jobs", type=_positive_int, default=d(1), help="worker processes")
    parser.add_argument("--cache", default=d(None), help="directory of cached polynomial tables")
    parser.add_argument("--no-timing", action="store_true", default=d(False),
                        help="omit timing from all output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moduli-roots",
                                     description="Exact checks on Betti polynomials of M_{0,n}bar.")
    _global_flags(parser, suppress=False)
    shared = argparse.ArgumentParser(add_help=False)
    _global_flags(shared, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[shared], help="print polynomials")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("range", help="N or A..B")

    p = sub.add_parser("roots", parents=[shared], help="isolate real roots")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("range")
    p.add_argument("-t", dest="t", type=_fraction, help="t value for F / Fhat")

    p = sub.add_parser("verify", parents=[shared], help="run verdict suites")
    p.add_argument("suite", choices=("all",) + SUITES)
    p.add_argument("--max-n", type=_positive_int, default=None)

    sub.add_parser("identities", parents=[shared], help="series and weight identities")

    p = sub.add_parser("branches", parents=[shared], help="branch data as CSV")
    p.add_argument("m", type=int)
    p.add_argument("--family", choices=("F", "Fhat"), default="F")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--figure-grid", action="store_true")
    g.add_argument("--default-grid", action="store_true")
    p.add_argument("-t", dest="ts", type=_fraction, action="append", default=[])
    p.add_argument("--out", help="write here instead of stdout")
    p.add_argument("--digits", type=_positive_int, default=10)

    p = sub.add_parser("report", parents=[shared], help="one line per suite")
    p.add_argument("--max-n", type=_positive_int, default=None)
    return parser


# -- verdict jobs ----------------------------------------------------------------
# A job is (function, args); both must be picklable for the process pool.

Job = tuple[Callable[..., verify.Verdict], tuple]


def _ulc_job(family: str, n: int, r: int) -> verify.Verdict:
    poly = recurrences.compute_p(n) if family == "P" else recurrences.compute_ptilde(n)
    return verify.verify_rulc(poly.coeffs, r, f"{family}_{n}").to_verdict(n)


def _location_job(family: str, index: int, t0: Fraction) -> verify.Verdict:
    if family == "F":
        return verify.verify_root_location(index, t0)
    return verify.verify_fhat_root_location(index, t0)


def suite_jobs(suite: str, max_n: int | None, order: int) -> list[Job]:
    def cap(default: int) -> int:
        return default if max_n is None else max_n

    jobs: list[Job] = []
    if suite == "realroot":
        jobs += [(verify.verify_main_theorem, (n,)) for n in range(4, cap(25) + 1)]
    elif suite == "interlace":
        jobs += [(verify.verify_interlacing, (n,)) for n in range(4, cap(20) + 1)]
    elif suite == "ulc":
        top = cap(25)
        jobs += [(_ulc_job, ("P", n, 1)) for n in range(3, top + 1)]
        jobs += [(_ulc_job, ("Ptilde", n, 1)) for n in range(1, top + 1)]
        jobs += [(_ulc_job, ("P", n, 2)) for n in range(3, min(top, 15) + 1)]
    elif suite == "identities":
        top = cap(12)
        jobs += [(identities.verify_uode, (order,)), (identities.verify_phi_pde, (order,)),
                 (identities.verify_convolution_convention, (order,)),
                 (identities.verify_phi_y_slice, (order,)),
                 (identities.verify_getzler_param, (min(order, 10),)),
                 (identities.verify_psi_power, (min(order, 12),))]
        jobs += [(identities.verify_slice_slope, (m,)) for m in range(2, min(order, 15) + 1)]
        for fam in ("F", "Fhat"):
            jobs += [(identities.verify_weight_identity, (fam, k)) for k in range(1, top + 1)]
        jobs += [(identities.verify_g_limit_identity, (m,)) for m in range(1, top + 1)]
    elif suite == "location":
        top = cap(12)
        for fam in ("F", "Fhat"):
            jobs += [(_location_job, (fam, k, t0)) for k in range(2, top + 1) for t0 in LOCATION_TS]
        jobs += [(verify.verify_g_roots, (m,)) for m in range(2, top + 1)]
        jobs += [(verify.verify_k_roots, (n,)) for n in range(2, top + 1)]
        jobs += [(verify.verify_fm_theorem, (n,)) for n in range(1, cap(20) + 1)]
        jobs += [(verify.verify_sign_alternation, (n,)) for n in range(4, cap(19) + 1)]
    elif suite == "crossings":
        top = cap(10)
        jobs += [(branches.verify_grid_crossings, ("F", n - 1)) for n in range(5, top + 1)]
        jobs += [(branches.verify_crossings, ("F", m)) for m in range(3, top)]
        jobs += [(branches.verify_crossings, ("Fhat", n)) for n in range(2, top)]
        jobs += [(branches.verify_endpoint_behavior, (fam, k))
                 for fam in ("F", "Fhat") for k in range(3, min(top, 10) + 1)]
        jobs += [(branches.verify_scaled_limit, (m,)) for m in range(3, min(top, 8) + 1)]
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return jobs


def _ulc_notes(max_n: int | None) -> list[dict]:
    """r = 3, 4 statuses of P_n: reported, never asserted."""
    top = 25 if max_n is None else max_n
    return [{"ulc_report": f"P_{n}", "status": {str(r): ok for r, ok in verify.ulc_status(n, (3, 4)).items()}}
            for n in range(4, top + 1)]


def _init_worker(cache: str | None) -> None:
    if cache:
        recurrences.load_cache(cache)


def _call(job: Job) -> verify.Verdict:
    fn, args = job
    return fn(*args)


def run_jobs(jobs: Sequence[Job], workers: int, cache: str | None = None) -> list[verify.Verdict]:
    """Results come back in job order whatever the worker count."""
    if workers <= 1 or len(jobs) <= 1:
        return [_call(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(cache,)) as pool:
        return list(pool.map(_call, jobs))


# -- output ------------------------------------------------------------------------


def _poly_record(family: str, n: int, poly) -> dict:
    return {"family": family, "n": n, "coeffs": poly.to_json()}


def _write_verdicts(report: SuiteReport, fmt: str, timing: bool, out) -> None:
    if fmt == "json":
        for v in report.verdicts:
            out.write(json.dumps(v.to_json(timing=False)) + "\n")
        for note in report.notes:
            out.write(json.dumps(note) + "\n")
        out.write(json.dumps(report.summary(timing)) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("claim", "index", "pass", "witness"))
        for v in report.verdicts:
            w.writerow((v.claim, json.dumps(v.index), v.passed,
                        "" if v.witness is None else json.dumps(v.witness)))
    else:
        for v in report.verdicts:
            line = f"{'PASS' if v.passed else 'FAIL'}  {v.claim}  {json.dumps(v.index)}"
            if not v.passed:
                line += f"  witness={json.dumps(v.witness)}"
            out.write(line + "\n")
        for note in report.notes:
            out.write(f"info  {note['ulc_report']}  r-ULC {note['status']}\n")
        tail = f"{report.passed}/{len(report.verdicts)} passed"
        if timing:
            tail += f" in {report.wall_ms / 1000:.2f} s"
        out.write(tail + "\n")


# -- commands ----------------------------------------------------------------------


def cmd_compute(args, cfg: RunConfig, out) -> int:
    rng = parse_range(args.range, args.family)
    fmt = cfg.fmt or "table"
    rows = [(n, recurrences.compute(args.family, n)) for n in rng]
    if fmt == "json":
        for n, poly in rows:
            out.write(json.dumps(_poly_record(args.family, n, poly)) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        if args.family in ("F", "Fhat", "H"):
            w.writerow(("family", "n", "y_degree", "t_degree", "coeff"))
            for n, poly in rows:
                for j, c in enumerate(poly.coeffs):
                    for i, a in enumerate(c.coeffs):
                        if a:
                            w.writerow((args.family, n, j, i, a))
        else:
            w.writerow(("family", "n", "degree", "coeff"))
            for n, poly in rows:
                for i, a in enumerate(poly.coeffs):
                    w.writerow((args.family, n, i, a))
    else:
        var = _VARIABLE.get(args.family, "t")
        for n, poly in rows:
            if isinstance(poly, BiPoly):
                out.write(f"{args.family}_{n} = {poly.pretty()}\n")
            else:
                betti = " ".join(str(c) for c in poly.coeffs)
                out.write(f"{args.family}_{n} = {poly.pretty(var)}    [{betti}]\n")
    return 0


def cmd_roots(args, cfg: RunConfig, out) -> int:
    rng = parse_range(args.range, args.family)
    fmt = cfg.fmt or "json"
    records = []
    for n in rng:
        poly = recurrences.compute(args.family, n)
        if isinstance(poly, BiPoly):
            if args.t is None:
                raise UsageError(f"{args.family} is bivariate; pass -t T")
            poly = poly.eval_t(args.t).clear_denominators()
        try:
            ivs = isolate_roots(poly, precision=cfg.width)
        except ValueError as exc:
            raise UsageError(f"{args.family}_{n}: {exc}") from None
        rec: dict[str, Any] = {"family": args.family, "n": n}
        if args.t is not None:
            rec["t"] = f"{args.t.numerator}/{args.t.denominator}"
        rec["roots"] = [iv.to_json() for iv in ivs]
        records.append(rec)
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("family", "n", "i", "mid", "lo", "hi"))
        for rec in records:
            for i, r in enumerate(rec["roots"], start=1):
                w.writerow((rec["family"], rec["n"], i, r["mid"], r["lo"], r["hi"]))
    else:
        for rec in records:
            mids = ", ".join(r["mid"] for r in rec["roots"])
            out.write(f"{rec['family']}_{rec['n']}: {mids}\n")
    return 0


def _run_suites(suites: Sequence[str], max_n, cfg: RunConfig) -> SuiteReport:
    start = time.perf_counter()
    jobs: list[Job] = []
    for s in suites:
        jobs += suite_jobs(s, max_n, cfg.order)
    verdicts = run_jobs(jobs, cfg.jobs, cfg.cache)
    notes = _ulc_notes(max_n) if "ulc" in suites else []
    return SuiteReport(verdicts, (time.perf_counter() - start) * 1000, cfg.echo(), notes)


def cmd_verify(args, cfg: RunConfig, out) -> int:
    if args.max_n is not None and args.max_n > MAX_INDEX:
        raise UsageError(f"--max-n must be <= {MAX_INDEX}")
    suites = SUITES if args.suite == "all" else (args.suite,)
    cfg.extra = {"suite": args.suite, "max_n": args.max_n}
    report = _run_suites(suites, args.max_n, cfg)
    _write_verdicts(report, cfg.fmt or "json", cfg.timing, out)
    return 0 if report.failed == 0 else 1


def cmd_identities(args, cfg: RunConfig, out) -> int:
    report = _run_suites(("identities",), None, cfg)
    _write_verdicts(report, cfg.fmt or "json", cfg.timing, out)
    return 0 if report.failed == 0 else 1


def cmd_branches(args, cfg: RunConfig, out) -> int:
    fam, m = args.family, args.m
    if (fam == "F" and m < 3) or (fam == "Fhat" and m < 2):
        raise UsageError(f"{fam} index too small for a branch: {m}")
    if m > MAX_INDEX:
        raise UsageError(f"index must be <= {MAX_INDEX}")
    if args.figure_grid:
        grid = branches.figure_grid()
    elif args.ts:
        if any(t >= 0 for t in args.ts):
            raise UsageError("t values must be negative")
        grid = list(args.ts)
    else:
        grid = branches.default_grid(fam, m)
    rows = branches.emit_figure_data(m, grid, cfg.width, args.digits, fam)
    fmt = cfg.fmt or "csv"
    if fmt == "csv":
        text = branches.rows_to_csv(rows)
    elif fmt == "json":
        text = "".join(json.dumps(r) + "\n" for r in rows)
    else:
        text = "".join(f"{r['t']:>16}  {r['branch']:>3}  {r['mid']}\n" for r in rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        out.write(text)
    return 0


def cmd_report(args, cfg: RunConfig, out) -> int:
    lines = []
    failed = 0
    total_ms = 0.0
    for s in SUITES:
        report = _run_suites((s,), args.max_n, cfg)
        failed += report.failed
        total_ms += report.wall_ms
        lines.append({"suite": s, "passed": report.passed, "total": len(report.verdicts),
                      **({"wall_ms": round(report.wall_ms, 1)} if cfg.timing else {})})
    dev = max(max(abs(a - b) for a, b in zip(r["computed"], r["printed"]))
              for r in branches.figure_comparison())
    fig_ok = dev <= Fraction(5, 10**7)
    failed += not fig_ok
    lines.append({"suite": "figure", "passed": int(fig_ok), "total": 1,
                  "max_deviation": f"{float(dev):.3e}"})
    if (cfg.fmt or "table") == "json":
        for line in lines:
            out.write(json.dumps(line) + "\n")
    else:
        for line in lines:
            extra = f"  max_deviation={line['max_deviation']}" if "max_deviation" in line else ""
            ms = f"  {line['wall_ms'] / 1000:.2f} s" if "wall_ms" in line else ""
            out.write(f"{line['suite']:<12} {line['passed']:>4}/{line['total']:<4}{ms}{extra}\n")
    return 0 if failed == 0 else 1


COMMANDS = {
    "compute": cmd_compute,
    "roots": cmd_roots,
    "verify": cmd_verify,
    "identities": cmd_identities,
    "branches": cmd_branches,
    "report": cmd_report,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.width <= 0:
        print("error: --width must be positive", file=sys.stderr)
        return 2
    cfg = RunConfig(args.command, args.format, args.order, args.width, args.jobs, args.cache,
                    timing=not args.no_timing)
    try:
        if cfg.cache and Path(cfg.cache).is_dir():
            recurrences.load_cache(cfg.cache)
        code = COMMANDS[args.command](args, cfg, out)
        if cfg.cache:
            used = max(len(recurrences._memo[f]) for f in recurrences.FAMILIES)
            recurrences.save_cache(cfg.cache, max(used, 1))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except recurrences.CacheError as exc:
        print(f"error: cache rejected: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
