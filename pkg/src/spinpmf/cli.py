"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 domain violation,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import fields
from pathlib import Path

import numpy as np

from spinpmf import verify
from spinpmf.bloch import DEFAULT_DOMAIN_TOL, BlochOutOfBall, BlochVector, classify_domain, octahedron_condition
from spinpmf.charfn import mh_cf_closed, mh_cf_oracle, wigner_weyl_cf
from spinpmf.pmf import DomainViolation, moments, pmf_from_bloch, quasi_from_bloch
from spinpmf.sampling import SampleBatch, estimate_and_classify, sample
from spinpmf.scan import DEFAULT_REGION, ScanSpec, fmt, write_scan

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3

SAMPLE_HEADER = ("x1", "x2", "x3")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _vec(values) -> list[str]:
    return [fmt(v) for v in values]


def _out(args):
    return open(args.out, "w", newline="") if args.out else None


# pmf


def _render_pmf(pmf, fmt_name: str) -> str:
    mom = moments(pmf)
    if fmt_name == "json":
        doc = {
            "bloch": [float(fmt(v)) for v in pmf.source_bloch],
            "outcomes": [list(x) for x, _ in pmf.items()],
            "masses": [float(fmt(m)) for _, m in pmf.items()],
            "moments": {
                "first": [float(fmt(v)) for v in mom.first],
                "second_cross": [float(fmt(v)) for v in mom.second_cross],
                "third": float(fmt(mom.third)),
            },
        }
        return json.dumps(doc)
    if fmt_name == "csv":
        lines = ["x1,x2,x3,mass"]
        lines += [f"{x[0]},{x[1]},{x[2]},{fmt(m)}" for x, m in pmf.items()]
        lines.append(f"# first_moments,{','.join(_vec(mom.first))}")
        lines.append(f"# second_cross_moments,{','.join(_vec(mom.second_cross))}")
        lines.append(f"# third_moment,{fmt(mom.third)}")
        return "\n".join(lines)
    lines = [f"{'x1':>3} {'x2':>3} {'x3':>3}  mass"]
    lines += [f"{x[0]:>3} {x[1]:>3} {x[2]:>3}  {fmt(m)}" for x, m in pmf.items()]
    lines.append(f"E[X1], E[X2], E[X3]        = {', '.join(_vec(mom.first))}")
    lines.append(f"E[X1X2], E[X1X3], E[X2X3]  = {', '.join(_vec(mom.second_cross))}")
    lines.append(f"E[X1X2X3]                  = {fmt(mom.third)}")
    return "\n".join(lines)


def _render_violation(err: DomainViolation, fmt_name: str) -> str:
    quasi = quasi_from_bloch(err.p)
    if fmt_name == "json":
        return json.dumps(
            {
                "error": "DOMAIN_VIOLATION",
                "bloch": [float(fmt(v)) for v in err.p],
                "l1": float(fmt(err.p.l1)),
                "witness_outcome": list(err.outcome),
                "witness_mass": float(fmt(err.mass)),
                "quasi_masses": [float(fmt(m)) for m in quasi.masses],
            }
        )
    return (
        f"domain violation: |p1|+|p2|+|p3| = {fmt(err.p.l1)} > 1\n"
        f"negative mass {fmt(err.mass)} at outcome ({err.outcome[0]},{err.outcome[1]},{err.outcome[2]})"
    )


def cmd_pmf(args) -> int:
    fmt_name = args.format or "table"
    if fmt_name not in ("json", "csv", "table"):
        raise UsageError(f"pmf does not support --format {fmt_name}")
    try:
        pmf = pmf_from_bloch(args.p)
    except DomainViolation as err:
        print(_render_violation(err, fmt_name))
        return EXIT_DOMAIN
    except BlochOutOfBall as err:
        print(f"domain violation: {err}")
        return EXIT_DOMAIN
    text = _render_pmf(pmf, fmt_name)
    _emit(args, text)
    return EXIT_OK


def _emit(args, text: str) -> None:
    f = _out(args)
    if f is None:
        print(text)
        return
    with f:
        f.write(text + "\n")


# charfn

_KINDS = {"ww": wigner_weyl_cf, "mh": mh_cf_closed, "mh-oracle": mh_cf_oracle}


def cmd_charfn(args) -> int:
    try:
        value = _KINDS[args.kind](args.p, args.t).value
    except BlochOutOfBall as err:
        raise UsageError(str(err)) from None
    diff = abs(mh_cf_closed(args.p, args.t).value - mh_cf_oracle(args.p, args.t).value) if args.check else None
    if args.format == "json":
        doc = {"kind": args.kind, "re": float(fmt(value.real)), "im": float(fmt(value.imag))}
        if diff is not None:
            doc["mh_oracle_diff"] = float(fmt(diff))
        print(json.dumps(doc))
    else:
        print(f"re {fmt(value.real)}")
        print(f"im {fmt(value.imag)}")
        if diff is not None:
            print(f"|mh - mh-oracle| {fmt(diff)}")
    return EXIT_OK


# classify


def cmd_classify(args) -> int:
    p = BlochVector(*args.p)
    domain = classify_domain(p, args.tol)
    if args.format == "json":
        print(json.dumps({
            "bloch": [float(fmt(v)) for v in p],
            "domain": domain.value,
            "octahedron": octahedron_condition(p),
            "l1": float(fmt(p.l1)),
            "l2": float(fmt(p.l2)),
            "min_quasi_mass": float(fmt((1 - p.l1) / 8)),
        }))
    else:
        print(domain.value)
    return EXIT_OK


# scan


def _parse_slice(text: str) -> tuple[int, float]:
    try:
        name, value = text.split("=")
        axis = ("p1", "p2", "p3").index(name.strip())
        return axis, float(value)
    except ValueError:
        raise UsageError(f"--slice expects p1=, p2= or p3=<value>, got {text!r}") from None


def cmd_scan(args) -> int:
    fmt_name = args.format or "csv"
    if fmt_name not in ("csv", "json"):
        raise UsageError(f"scan does not support --format {fmt_name}")
    region = _parse_region(args.region) if args.region else DEFAULT_REGION
    try:
        spec = ScanSpec(
            resolution=args.resolution,
            region=region,
            slice=_parse_slice(args.slice) if args.slice else None,
            tol=args.tol,
        )
    except ValueError as err:
        raise UsageError(str(err)) from None
    try:
        f = _out(args)
    except OSError as err:
        print(f"cannot write {args.out}: {err}", file=sys.stderr)
        return EXIT_USAGE
    if f is None:
        n = write_scan(spec, sys.stdout, fmt_name)
    else:
        with f:
            n = write_scan(spec, f, fmt_name)
        print(f"wrote {n} records to {args.out}", file=sys.stderr)
    return EXIT_OK


def _parse_region(values: list[float]) -> tuple[tuple[float, float], ...]:
    return tuple((values[i], values[i + 1]) for i in (0, 2, 4))


# sample / estimate


def _render_estimate(result, fmt_name: str) -> str:
    est = result.estimate
    if fmt_name == "json":
        return json.dumps({
            "n": est.n,
            "p_hat": [float(fmt(v)) for v in est.p_hat],
            "stderr": [float(fmt(v)) for v in est.stderr],
            "domain": result.domain.value,
            "admissible": result.admissible,
        })
    return "\n".join([
        f"n        {est.n}",
        f"p_hat    {' '.join(_vec(est.p_hat))}",
        f"stderr   {' '.join(_vec(est.stderr))}",
        f"domain   {result.domain.value}",
        f"admissible {str(result.admissible).lower()}",
    ])


def cmd_sample(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    try:
        pmf = pmf_from_bloch(args.p)
    except (DomainViolation, BlochOutOfBall) as err:
        print(f"domain violation: {err}; nothing classical to sample")
        return EXIT_DOMAIN
    batch = sample(pmf, args.n, args.seed)
    if args.out:
        write_samples(batch, Path(args.out))
    if batch.n >= 2:
        print(_render_estimate(estimate_and_classify(batch, args.tol), args.format or "table"))
    return EXIT_OK


def write_samples(batch: SampleBatch, path: Path) -> None:
    with open(path, "w", newline="") as f:
        f.write(",".join(SAMPLE_HEADER) + "\n")
        np.savetxt(f, batch.outcomes, fmt="%d", delimiter=",")


def read_samples(path: Path) -> SampleBatch:
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if tuple(header or ()) != SAMPLE_HEADER:
            raise UsageError(f"{path}: expected header {','.join(SAMPLE_HEADER)}")
        rows = [tuple(int(v) for v in row) for row in reader if row]
    try:
        return SampleBatch.from_outcomes(rows)
    except ValueError as err:
        raise UsageError(f"{path}: {err}") from None


def cmd_estimate(args) -> int:
    try:
        batch = read_samples(Path(args.samples))
    except OSError as err:
        raise UsageError(str(err)) from None
    if batch.n < 2:
        raise UsageError("need at least two samples")
    print(_render_estimate(estimate_and_classify(batch, args.tol), args.format or "table"))
    return EXIT_OK


# verify


def _parse_overrides(items: list[str]) -> dict:
    known = {f.name: f.type for f in fields(verify.VerifyConfig)}
    out = {}
    for item in items:
        name, _, value = item.partition("=")
        if name not in known or name == "seed":
            raise UsageError(f"unknown override {name!r}")
        out[name] = int(value) if known[name] in ("int", int) else float(value)
    return out


def cmd_verify(args) -> int:
    base = verify.VerifyConfig() if args.full else verify.QUICK
    try:
        cfg = verify.with_overrides(base, seed=args.seed, **_parse_overrides(args.set or []))
    except ValueError as err:
        raise UsageError(str(err)) from None
    names = args.suite or list(verify.SUITES)
    failed = False
    lines = []
    for result in verify.run(names, cfg):
        status = "PASS" if result.passed else "FAIL"
        line = f"{status} {result.name:<13} max_error={fmt(result.max_error)} tol={fmt(result.tolerance)}  {result.detail}"
        if not result.passed:
            failed = True
            line += f"\n     failing case: {json.dumps(result.failing_case)}"
        lines.append(line)
    lines.append(f"seed={cfg.seed} {'all suites passed' if not failed else 'FAILED'}")
    _emit(args, "\n".join(lines))
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)

    parser = _Parser(prog="spinpmf", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "csv", "table"), default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tol", type=float, default=DEFAULT_DOMAIN_TOL)
    parser.add_argument("--out", default=None)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def bloch_args(p):
        p.add_argument("p", nargs=3, type=float, metavar="P", help="Bloch vector p1 p2 p3")

    p = sub.add_parser("pmf", parents=[common], help="trivariate PMF for a Bloch vector")
    bloch_args(p)
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("charfn", parents=[common], help="evaluate a characteristic function")
    bloch_args(p)
    p.add_argument("--t", nargs=3, type=float, required=True, metavar="T")
    p.add_argument("--kind", choices=tuple(_KINDS), default="mh")
    p.add_argument("--check", action="store_true", help="also print |mh - mh-oracle|")
    p.set_defaults(func=cmd_charfn)

    p = sub.add_parser("classify", parents=[common], help="domain class of a Bloch vector")
    bloch_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", parents=[common], help="grid scan of Bloch space")
    p.add_argument("--resolution", type=int, default=21)
    p.add_argument("--region", nargs=6, type=float, metavar=("P1MIN", "P1MAX", "P2MIN", "P2MAX", "P3MIN", "P3MAX"))
    p.add_argument("--slice", help="fix one axis, e.g. p3=0")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("sample", parents=[common], help="draw outcomes from the PMF")
    bloch_args(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("estimate", parents=[common], help="estimate p from a sample CSV")
    p.add_argument("samples", help="CSV with header x1,x2,x3")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("verify", parents=[common], help="run the property suites")
    p.add_argument("--suite", action="append", choices=tuple(verify.SUITES))
    p.add_argument("--set", action="append", metavar="NAME=VALUE", help="override a VerifyConfig field")
    p.add_argument("--full", action="store_true", help="acceptance-sized draws")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"spinpmf {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
