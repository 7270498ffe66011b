"""Command-line front end: list, verify, sample, reparam, report.

Exit codes: 0 all requested checks pass, 1 verification failure,
2 usage error (unknown ids, bad arguments, domain breaches),
3 numeric non-convergence.

CSV output is comma-separated with LF line endings, no quoting, floats at
17 significant digits so doubles round-trip.  JSON reports have a stable
key order and zeroed runtime_ms, making repeated runs byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

import numpy as np

from . import cases, catalog, curves, numdiff
from .config import ConfigError, LabConfig, load_config
from .errors import (
    DomainError,
    GeometryError,
    NumericError,
    PathlabError,
    PreconditionError,
    TracesDifferError,
    UnknownEntryError,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _write_json(path: str, payload) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _load_cfg(path: Optional[str]) -> LabConfig:
    if path is None:
        return LabConfig()
    return load_config(path)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_list(args) -> int:
    print("catalog entries:")
    for eid in catalog.entry_ids():
        entry = catalog.REGISTRY[eid]
        kind = "bivariate" if isinstance(entry, catalog.BivariateEntry) else "univariate"
        print(f"  {eid:24s} {kind:10s} {entry.citation}")
    print("curves:")
    for cid in curves.curve_ids():
        crv = curves.get_curve(cid)
        print(f"  {cid:24s} dim={crv.dim} domain={crv.domain}")
    print("cases:")
    for cid in cases.case_ids():
        print(f"  {cid}")
    return EXIT_PASS


def _print_report(report: cases.VerificationReport, elapsed_ms: int) -> None:
    print(f"{report.case_id}: {report.status.upper()} "
          f"({len(report.claims)} claims, {elapsed_ms} ms)")
    for c in report.claims:
        print(f"  [{c.status:12s}] {c.text}")


def _report_exit(reports) -> int:
    if any(r.status == "fail" for r in reports):
        return EXIT_FAIL
    if any(r.status == "inconclusive" for r in reports):
        return EXIT_NUMERIC
    return EXIT_PASS


def _cmd_verify(args) -> int:
    cfg = _load_cfg(args.config)
    try:
        start = time.perf_counter()
        report = cases.run_case(args.case, cfg)
        elapsed = int(1000.0 * (time.perf_counter() - start))
    except UnknownEntryError:
        print(f"error: unknown case {args.case!r}; see 'pathlab list'", file=sys.stderr)
        return EXIT_USAGE
    _print_report(report, elapsed)
    if args.json:
        _write_json(args.json, report.to_json_dict())
    return _report_exit([report])


def _cmd_report(args) -> int:
    if not args.all:
        print("error: report requires --all", file=sys.stderr)
        return EXIT_USAGE
    cfg = _load_cfg(args.config)
    reports = []
    for cid in cases.case_ids():
        start = time.perf_counter()
        report = cases.run_case(cid, cfg)
        elapsed = int(1000.0 * (time.perf_counter() - start))
        _print_report(report, elapsed)
        reports.append(report)
    if args.json:
        _write_json(args.json, [r.to_json_dict() for r in reports])
    return _report_exit(reports)


def _cmd_sample(args) -> int:
    try:
        entry = catalog.get(args.entry)
    except UnknownEntryError:
        print(f"error: unknown entry {args.entry!r}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(entry, catalog.BivariateEntry):
        print(f"error: entry {args.entry!r} is bivariate; sampling is univariate",
              file=sys.stderr)
        return EXIT_USAGE
    if args.points < 2:
        print("error: --points must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    if not (entry.domain.contains(args.start) and entry.domain.contains(args.stop)):
        print(f"error: [{args.start}, {args.stop}] outside domain {entry.domain}",
              file=sys.stderr)
        return EXIT_USAGE
    xs = np.linspace(args.start, args.stop, args.points)
    ys = entry.eval_many(xs)
    rows = [xs, ys]
    header = "x,f"
    if args.deriv:
        header = "x,f,f_prime"
        if entry.analytic_derivative is not None:
            rows.append(entry.deriv_many(xs))
        else:
            rows.append(np.array([
                numdiff.derivative(entry, float(x)).value for x in xs
            ]))
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for vals in zip(*rows):
            fh.write(",".join(_fmt(v) for v in vals) + "\n")
    print(f"wrote {args.points} rows to {args.out}")
    return EXIT_PASS


def _cmd_reparam(args) -> int:
    cfg = _load_cfg(args.config)
    try:
        gamma = curves.get_curve(args.source)
        eta = curves.get_curve(args.target)
    except UnknownEntryError as exc:
        print(f"error: unknown curve {exc.args[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        table = curves.reparametrize(gamma, eta, grid=args.points,
                                     tol=cfg.residual_tol, probe_grid=cfg.probe_grid)
    except TracesDifferError as exc:
        print(f"not equivalent: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (GeometryError, NumericError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t,s,phi_prime,residual\n")
        for row in table.rows:
            fh.write(",".join(_fmt(v) for v in
                              (row.t, row.s, row.phi_prime, row.residual)) + "\n")
    for note in table.warnings:
        print(f"note: {note}", file=sys.stderr)
    print(f"wrote {len(table.rows)} rows to {args.out}")
    return EXIT_PASS


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathlab",
        description="Numerical verification lab for classic calculus pathologies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list catalog entries, curves, and cases")

    p = sub.add_parser("verify", help="run one verification case")
    p.add_argument("case")
    p.add_argument("--json", metavar="FILE", help="write the report as JSON")
    p.add_argument("--config", metavar="FILE", help="key=value config file")

    p = sub.add_parser("sample", help="emit (x, f(x)[, f'(x)]) rows as CSV")
    p.add_argument("entry")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--deriv", action="store_true")
    p.add_argument("--out", required=True)

    p = sub.add_parser("reparam", help="solve gamma = eta o phi and emit the table")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--out", required=True)
    p.add_argument("--config", metavar="FILE")

    p = sub.add_parser("report", help="run every case")
    p.add_argument("--all", action="store_true")
    p.add_argument("--json", metavar="FILE")
    p.add_argument("--config", metavar="FILE")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    handlers = {
        "list": _cmd_list,
        "verify": _cmd_verify,
        "sample": _cmd_sample,
        "reparam": _cmd_reparam,
        "report": _cmd_report,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except PathlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
