"""Command line: ``kmvir verify | table | dims``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for usage
or configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ConfigError, KmvirError
from .fock import ModuleVector, enumerate_basis, format_monomial, module_spec
from .harness.cache import OperatorMatrixCache
from .harness.config import ALL, SUITES, SuiteConfig
from .harness.oracles import graded_dimensions
from .harness.report import emit_report
from .harness.suites import run_suite, sugawara_matrix
from .sugawara import SugawaraConfig


def _parse_set(values: list[str]) -> dict:
    out = {}
    for item in values or []:
        name, sep, value = item.partition("=")
        if not sep or not value:
            raise ConfigError(f"--set expects name=value, got {item!r}")
        name = {"lam": "lambda", "λ": "lambda", "μ": "mu"}.get(name.strip(), name.strip())
        out[name] = value.strip()
    return out


def _common(p: argparse.ArgumentParser):
    p.add_argument("--algebra", default="sl2", help="sl<N> (default sl2)")
    p.add_argument("--level-structure", type=int, default=0, metavar="n")
    p.add_argument("--degree", type=int, default=6, metavar="D", help="truncation weight (default 6)")
    p.add_argument("--mode-range", type=int, default=4, metavar="N", help="modes -N..N (default 4)")
    p.add_argument("--set", action="append", default=[], metavar="NAME=VALUE", help="fix k, c, lambda or mu")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kmvir", description="Exact checks of the Segal-Sugawara construction.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=SUITES + (ALL,))
    _common(verify)
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--cache", default=None, metavar="PATH", help="operator-matrix cache directory")
    verify.add_argument("--out", default=None, metavar="PATH", help="write the report here instead of stdout")
    verify.add_argument("--format", choices=("json", "text"), default="json")
    verify.add_argument(
        "--negative-control", action="store_true", help="corrupt one structure constant; the run must fail"
    )

    table = sub.add_parser("table", help="print operator matrices")
    table.add_argument("operator", choices=("sugawara",))
    _common(table)
    table.add_argument("--cache", default=None, metavar="PATH")

    dims = sub.add_parser("dims", help="graded dimensions against generating functions")
    _common(dims)
    return parser


def _config(args) -> SuiteConfig:
    return SuiteConfig(
        suite=getattr(args, "suite", ALL),
        algebra=args.algebra,
        level_structure=args.level_structure,
        truncation_degree=args.degree,
        mode_range=args.mode_range,
        params=_parse_set(args.set),
        workers=getattr(args, "workers", 1),
        cache=getattr(args, "cache", None),
        out=getattr(args, "out", None),
        format=getattr(args, "format", "json"),
        negative_control=getattr(args, "negative_control", False),
    )


def _verify(args, out) -> int:
    cfg = _config(args).validate()
    report = run_suite(cfg)
    data = emit_report(report, cfg.format)
    if cfg.out:
        Path(cfg.out).write_bytes(data)
        verdict = "PASS" if report.aggregate else "FAIL"
        print(f"{verdict}  {len(report.checks) - len(report.failures)}/{len(report.checks)} checks; report in {cfg.out}", file=out)
    else:
        out.write(data.decode())
    return 0 if report.aggregate else 1


def _table(args, out) -> int:
    cfg = _config(args)
    cfg.suite = "sugawara"
    cfg.validate()
    spec = module_spec("KacMoody", cfg.lie(), cfg.level_structure, cfg.truncation_degree, "Quantum", cfg.parameter_values())
    scfg = SugawaraConfig(spec)
    cache = OperatorMatrixCache(cfg.cache) if cfg.cache else None
    n = spec.level_structure
    for d in range(spec.truncation_degree + 1):
        print(f"# weight {d}", file=out)
        for m in range(-cfg.mode_range, cfg.mode_range + 1):
            if d + 2 * n - m > spec.truncation_degree or d + 2 * n - m < 0:
                continue
            op = f"sugawara/L^S_{m}"
            matrix = cache.load(op, d, spec) if cache else None
            if matrix is None:
                matrix = sugawara_matrix(scfg, m, d)
                if cache:
                    cache.store(op, d, spec, matrix)
            print(f"L^S_{m}:", file=out)
            for w in enumerate_basis(spec, d):
                img: ModuleVector = matrix[w]
                print(f"  {format_monomial(w, spec)} -> {img.to_text()}", file=out)
    return 0


def _dims(args, out) -> int:
    cfg = _config(args)
    cfg.suite = "dimensions"
    cfg.validate()
    lie = cfg.lie()
    ok = True
    print(f"{'kind':<11} {'n':>2} {'weight':>6} {'basis':>8} {'series':>8}", file=out)
    for kind, dim_g, vir in (("KacMoody", lie.dimension, False), ("Virasoro", 0, True), ("Semidirect", lie.dimension, True)):
        spec = module_spec(kind, None if kind == "Virasoro" else lie, cfg.level_structure, cfg.truncation_degree)
        series = graded_dimensions(dim_g, vir, cfg.truncation_degree)
        for d in range(cfg.truncation_degree + 1):
            got = len(enumerate_basis(spec, d))
            ok = ok and got == series[d]
            mark = "" if got == series[d] else "  MISMATCH"
            print(f"{kind:<11} {cfg.level_structure:>2} {d:>6} {got:>8} {series[d]:>8}{mark}", file=out)
    return 0 if ok else 1


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            return _verify(args, out)
        if args.command == "table":
            return _table(args, out)
        return _dims(args, out)
    except (ConfigError, KmvirError) as exc:
        parser.print_usage(sys.stderr)
        print(f"kmvir: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
