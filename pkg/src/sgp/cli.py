"""Command-line interface.

Subcommands::

    sgp info --gens 7,8,17,18 [--apery] [--betti]
    sgp apery --gens 7,8,17,18 [--a 7]
    sgp betti --gens 35,36,41,42
    sgp family verify --family sym-s --e 4 --q 1 --d 1
    sgp scan --family unbounded --n 5..7 --e 4 --q 0 --csv out.csv --jobs 4
    sgp ideal check --n 5

Every command prints a human summary by default and a JSON report with
``--json``. Exit codes: 0 verified, 1 a closed-form check failed, 2 invalid
input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from typing import Any, Sequence

from . import families as fam
from .core import (
    SemigroupSpec,
    apery,
    frobenius,
    gaps,
    genus,
    is_symmetric,
    minimal_generators,
)
from .errors import FamilyContractViolation, InvalidInput, SemigroupError
from .presentations import betti_elements, default_budget, minimal_presentation_cardinality

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2


class UsageError(Exception):
    pass


def _jsonable(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "infinite"
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def make_report(
    command: str,
    params: dict[str, Any],
    checks: Sequence[fam.Check] = (),
    values: dict[str, Any] | None = None,
    timing_ms: float = 0.0,
) -> dict[str, Any]:
    """Report document; key order is fixed so equal inputs serialize equally."""
    doc: dict[str, Any] = {
        "command": command,
        "params": _jsonable(params),
        "checks": [_jsonable(c.as_dict()) for c in checks],
    }
    if values is not None:
        doc["values"] = _jsonable(values)
    doc["timing_ms"] = round(timing_ms, 3)
    doc["schema_version"] = SCHEMA_VERSION
    return doc


def dump_report(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def parse_int_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise UsageError("empty generator list")
    return values


def parse_range(text: str) -> list[int]:
    """``5``, ``5..8`` (inclusive) or ``1,2,5``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            a, b = int(lo), int(hi)
            if b < a:
                raise UsageError(f"empty range {text!r}")
            return list(range(a, b + 1))
        return parse_int_list(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None


def _read_generators(args: argparse.Namespace) -> list[int]:
    if args.gens and args.gens_file:
        raise UsageError("give either --gens or --gens-file, not both")
    if args.gens:
        values = parse_int_list(args.gens)
    elif args.gens_file:
        try:
            with open(args.gens_file, encoding="utf-8") as fh:
                lines = [ln.strip() for ln in fh if ln.strip()]
        except OSError as exc:
            raise UsageError(f"cannot read {args.gens_file}: {exc}") from None
        try:
            values = [int(ln) for ln in lines]
        except ValueError:
            raise UsageError(f"{args.gens_file}: one integer per line expected") from None
    else:
        raise UsageError("one of --gens or --gens-file is required")
    if any(v <= 0 for v in values):
        raise UsageError("generators must be positive")
    return values


def _budget(args: argparse.Namespace) -> int:
    if getattr(args, "budget", None) is not None:
        if args.budget <= 0:
            raise UsageError("--budget must be positive")
        return args.budget
    return default_budget()


def _semigroup(args: argparse.Namespace) -> tuple[SemigroupSpec, list[int]]:
    given = _read_generators(args)
    S = SemigroupSpec(tuple(minimal_generators(given)))
    return S, given


def _emit(doc: dict[str, Any], args: argparse.Namespace, out) -> None:
    if getattr(args, "json", False):
        print(dump_report(doc), file=out)
        return
    print(f"{doc['command']}  {json.dumps(doc['params'])}", file=out)
    for key, value in doc.get("values", {}).items():
        print(f"  {key}: {value}", file=out)
    for c in doc["checks"]:
        status = "PASS" if c["pass"] else "FAIL"
        tail = f"  witness={json.dumps(c['witness'])}" if "witness" in c else ""
        print(f"  [{status}] {c['name']}{tail}", file=out)


def _exit_for(checks: Sequence[fam.Check]) -> int:
    return EXIT_OK if all(c.passed for c in checks) else EXIT_CHECK_FAILED


# --------------------------------------------------------------------------
# commands


def cmd_info(args, out) -> int:
    start = time.perf_counter()
    S, given = _semigroup(args)
    values: dict[str, Any] = {}
    if sorted(set(given)) != list(S.generators):
        values["notice"] = f"input {given} is not minimal; reduced to {list(S.generators)}"
    values.update(
        minimal_generators=list(S.generators),
        multiplicity=S.multiplicity,
        embedding_dimension=S.embedding_dimension,
        frobenius=frobenius(S),
        genus=genus(S),
        symmetric=is_symmetric(S),
    )
    if args.apery:
        values["apery"] = sorted(apery(S, S.multiplicity).entries)
    if args.betti:
        values["presentation_cardinality"] = minimal_presentation_cardinality(S, _budget(args))
    doc = make_report("info", {"gens": given}, (), values, (time.perf_counter() - start) * 1e3)
    _emit(doc, args, out)
    return EXIT_OK


def cmd_apery(args, out) -> int:
    start = time.perf_counter()
    S, given = _semigroup(args)
    a = args.a if args.a is not None else S.multiplicity
    table = apery(S, a)
    values = {"modulus": a, "entries": list(table.entries), "frobenius": frobenius(S),
              "gaps": gaps(S) if args.gaps else None}
    if values["gaps"] is None:
        del values["gaps"]
    doc = make_report("apery", {"gens": given, "a": a}, (), values, (time.perf_counter() - start) * 1e3)
    _emit(doc, args, out)
    return EXIT_OK


def cmd_betti(args, out) -> int:
    start = time.perf_counter()
    S, given = _semigroup(args)
    data = betti_elements(S, _budget(args))
    values = {
        "betti": [
            {"element": b.element, "components": b.component_count, "witness": list(b.witness)}
            for b in data
        ],
        "presentation_cardinality": sum(b.component_count - 1 for b in data),
    }
    doc = make_report("betti", {"gens": given}, (), values, (time.perf_counter() - start) * 1e3)
    _emit(doc, args, out)
    return EXIT_OK


def _family_params(args: argparse.Namespace) -> dict[str, int]:
    needed = {
        "unbounded": ("n", "e", "q"),
        "sym-s": ("e", "q", "d"),
        "sym-t": ("e", "q", "d"),
        "bresinsky": ("q2",),
    }[args.family]
    params = {}
    for key in needed:
        value = getattr(args, key)
        if value is None:
            raise UsageError(f"--{key} is required for family {args.family}")
        params[key] = value
    return params


def cmd_family_verify(args, out) -> int:
    start = time.perf_counter()
    params = _family_params(args)
    budget = _budget(args)
    f = args.family
    if args.ideal and f != "unbounded":
        raise UsageError("--ideal applies to the unbounded family only")
    if f == "unbounded":
        report = fam.verify_unbounded(
            fam.UnboundedParams(params["n"], params["e"], params["q"]), args.ideal, budget
        )
    elif f == "sym-s":
        report = fam.verify_symmetric_family(fam.SymSParams(**params), budget)
    elif f == "sym-t":
        report = fam.verify_symmetric_family(fam.SymTParams(**params), budget)
    else:
        report = fam.verify_bresinsky(fam.BresinskyParams(params["q2"]), budget)
    doc = make_report(f"family verify --family {f}", params, report.checks, report.values,
                      (time.perf_counter() - start) * 1e3)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "pass", "witness"])
        for c in report.checks:
            w.writerow([c.name, "true" if c.passed else "false",
                        "" if c.witness is None else json.dumps(_jsonable(c.witness))])
        out.write(buf.getvalue())
    else:
        _emit(doc, args, out)
    return _exit_for(report.checks)


def _scan_grid(args: argparse.Namespace) -> list[dict[str, int]]:
    f = args.family
    keys = {"unbounded": ("n", "e", "q"), "sym-s": ("e", "q", "d"),
            "sym-t": ("e", "q", "d"), "bresinsky": ("q2",)}[f]
    ranges = []
    for key in keys:
        raw = getattr(args, key)
        if raw is None:
            raise UsageError(f"--{key} is required for family {f}")
        ranges.append(parse_range(str(raw)))
    grid: list[dict[str, int]] = [{}]
    for key, values in zip(keys, ranges):
        grid = [dict(g, **{key: v}) for g in grid for v in sorted(values)]
    return grid


def scan_checks(family: str, rows: Sequence[fam.ScanRow]) -> list[fam.Check]:
    checks = []
    ok = [r for r in rows if r.status == "ok"]
    if family in ("sym-s", "sym-t"):
        bad = [(r.e, r.q, r.d) for r in ok if not r.symmetric]
        checks.append(fam.Check("all_symmetric", not bad, bad or None))
        bad = [(r.e, r.q, r.d, r.mu) for r in ok if r.mu != r.e * (r.e - 1) // 2 - 1]
        checks.append(fam.Check("presentation_equals_e(e-1)/2-1", not bad, bad or None))
    elif family == "unbounded":
        bad = [(r.n, r.e, r.q, r.mu) for r in ok if r.e == 4 and r.q == 0 and r.mu != 2 * (r.n + 1)]
        checks.append(fam.Check("mu_equals_2(n+1)_at_e4_q0", not bad, bad or None))
        bad = [(r.n, r.e, r.q, r.mu) for r in ok if r.q == r.e - 4 and r.mu < r.n + 2]
        checks.append(fam.Check("mu_at_least_n+2_at_q=e-4", not bad, bad or None))
    elif family == "bresinsky":
        mus = [r.mu for r in ok]
        increasing = all(a < b for a, b in zip(mus, mus[1:]))
        checks.append(fam.Check("mu_strictly_increasing", increasing, None if increasing else mus))
    return checks


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def write_scan_csv(rows: Sequence[fam.ScanRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(fam.SCAN_FIELDS)
        for r in rows:
            w.writerow([_cell(getattr(r, k)) for k in fam.SCAN_FIELDS])


def cmd_scan(args, out) -> int:
    start = time.perf_counter()
    grid = _scan_grid(args)
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    rows = fam.scan(args.family, grid, _budget(args), args.jobs)
    if args.csv:
        try:
            write_scan_csv(rows, args.csv)
        except OSError as exc:
            raise UsageError(f"cannot write {args.csv}: {exc}") from None
    checks = scan_checks(args.family, rows)
    params = {k: getattr(args, k) for k in ("n", "e", "q", "d", "q2") if getattr(args, k) is not None}
    params["family"] = args.family
    doc = make_report("scan", params, checks, {"rows": [r.as_dict() for r in rows]},
                      (time.perf_counter() - start) * 1e3)
    if args.json:
        _emit(doc, args, out)
    else:
        print(f"scan --family {args.family}: {len(rows)} cells", file=out)
        print(",".join(fam.SCAN_FIELDS), file=out)
        for r in rows:
            print(",".join(_cell(getattr(r, k)) for k in fam.SCAN_FIELDS), file=out)
        for c in checks:
            print(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}", file=out)
    return _exit_for(checks)


def cmd_ideal_check(args, out) -> int:
    start = time.perf_counter()
    if args.n < 5:
        raise UsageError("--n must be >= 5")
    report = fam.verify_unbounded(fam.UnboundedParams(args.n, 4, 0), True, _budget(args))
    doc = make_report("ideal check", {"n": args.n}, report.checks, report.values,
                      (time.perf_counter() - start) * 1e3)
    _emit(doc, args, out)
    return _exit_for(report.checks)


# --------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse already exits 2; keep the message format
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sgp", description="Numerical semigroups from concatenated arithmetic sequences.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def gens_args(p):
        p.add_argument("--gens", help="comma-separated generators")
        p.add_argument("--gens-file", help="file with one generator per line")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--budget", type=int, help="fiber-size limit per element")

    p = sub.add_parser("info", help="basic invariants of a semigroup")
    gens_args(p)
    p.add_argument("--apery", action="store_true", help="include the Apéry set of the multiplicity")
    p.add_argument("--betti", action="store_true", help="include the minimal presentation size")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("apery", help="Apéry table")
    gens_args(p)
    p.add_argument("--a", type=int, help="modulus (default: multiplicity)")
    p.add_argument("--gaps", action="store_true", help="also list the gaps")
    p.set_defaults(func=cmd_apery)

    p = sub.add_parser("betti", help="Betti elements and presentation size")
    gens_args(p)
    p.set_defaults(func=cmd_betti)

    fp = sub.add_parser("family", help="family verifiers")
    fsub = fp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = fsub.add_parser("verify", help="check every closed-form claim for one parameter point")
    p.add_argument("--family", required=True, choices=["sym-s", "sym-t", "unbounded", "bresinsky"])
    for key in ("n", "e", "q", "d", "q2"):
        p.add_argument(f"--{key}", type=int)
    p.add_argument("--ideal", action="store_true", help="unbounded e=4, q=0: certify the binomial generators")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true", help="checks as CSV on stdout")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_family_verify)

    p = sub.add_parser("scan", help="grid scan of presentation sizes")
    p.add_argument("--family", required=True, choices=["sym-s", "sym-t", "unbounded", "bresinsky"])
    for key in ("n", "e", "q", "d", "q2"):
        p.add_argument(f"--{key}", help="value, a..b, or comma list")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int)
    p.add_argument("--csv", help="write rows to this CSV file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scan)

    ip = sub.add_parser("ideal", help="binomial generating sets for e = 4, q = 0")
    isub = ip.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = isub.add_parser("check", help="generation, minimality, colength and identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_ideal_check)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, InvalidInput) as exc:
        print(f"sgp: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except FamilyContractViolation as exc:
        print(f"sgp: contract violation: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except SemigroupError as exc:
        print(f"sgp: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
