#!/usr/bin/env python3
"""
Command-line front end.

    wahlrank plane --curve fermat:8 --k 0..1 --mode exact
    wahlrank p1 --a 0..4 --b 0..4 --k 1
    wahlrank criteria product --g1 1 --g2 2 --d1 7 --d2 9 --k 2

Exit codes: 0 success, 1 verification mismatch, 2 input error.

Curves must be given in admissible coordinates (coefficient of y^d nonzero,
line at infinity transverse). A generic linear change of coordinates makes
any smooth plane curve admissible.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict
from typing import Any, Callable, Dict, List, Optional, Sequence

from wahlrank import reports
from wahlrank.engine import criteria
from wahlrank.engine.curve import PlaneCurve, curve_from_spec, fermat_curve
from wahlrank.engine.gaussian import ARITHMETIC_MODES, DOMAIN_METHODS, Arithmetic
from wahlrank.engine.policy import STATEMENTS
from wahlrank.engine.scalars import rat_text, to_rat
from wahlrank.engine.sweep import make_p1_jobs, make_plane_jobs, run_p1, run_plane
from wahlrank.errors import WahlRankError
from wahlrank.inputs import (
    DEFAULT_CONFIG_PATH,
    OUTPUT_FORMATS,
    RunConfig,
    load_yaml,
    parse_primes,
    parse_range,
    resolve_threads,
    with_overrides,
)

log = logging.getLogger("wahlrank")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2


_console: Optional[logging.Handler] = None


def setup_logging(verbose: bool = False, quiet: bool = False) -> logging.Logger:
    """One stderr handler on the package logger; repeated calls replace it."""
    global _console
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    log.setLevel(level)
    if _console is not None:
        log.removeHandler(_console)
    _console = logging.StreamHandler()
    _console.setLevel(level)
    _console.setFormatter(
        logging.Formatter("%(asctime)s - %(levelname)s - %(message)s", datefmt="%Y-%m-%d %H:%M:%S")
    )
    log.addHandler(_console)
    return log


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help=f"YAML run configuration (default {DEFAULT_CONFIG_PATH})")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, help="output format")
    parser.add_argument("--output", help="write the report to this path instead of stdout")
    parser.add_argument("--threads", type=int, help="worker processes (WAHLRANK_THREADS overrides)")
    noise = parser.add_mutually_exclusive_group()
    noise.add_argument("--verbose", action="store_true", help="debug logging")
    noise.add_argument("--quiet", action="store_true", help="warnings and errors only")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wahlrank",
        description="Ranks of higher Gaussian maps of plane curves and surjectivity criteria",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    plane = sub.add_parser("plane", help="rank of the k-th Gaussian map of plane curves")
    _common(plane)
    plane.add_argument("--curve", action="append", help='"fermat:<d>" or a JSON curve file (repeatable)')
    plane.add_argument("--d", help="Fermat degrees, a..b or a single integer")
    plane.add_argument("--k", help="orders, a..b or a single integer")
    plane.add_argument("--mode", choices=ARITHMETIC_MODES, help="rank arithmetic")
    plane.add_argument("--primes", help="comma-separated screening primes")
    plane.add_argument("--domain", choices=DOMAIN_METHODS, help="domain construction")
    plane.set_defaults(handler=cmd_plane)

    p1 = sub.add_parser("p1", help="Gaussian maps of O(a), O(b) on the line")
    _common(p1)
    p1.add_argument("--a", help="degrees of the first bundle")
    p1.add_argument("--b", help="degrees of the second bundle")
    p1.add_argument("--k", help="orders")
    p1.set_defaults(handler=cmd_p1)

    crit = sub.add_parser("criteria", help="closed-form formulas and surjectivity criteria")
    _common(crit)
    queries = crit.add_subparsers(dest="query", required=True)

    def query(name: str, help_text: str, *ints: str) -> argparse.ArgumentParser:
        q = queries.add_parser(name, help=help_text)
        for flag in ints:
            q.add_argument(f"--{flag}", type=int, required=True)
        return q

    query("product", "product-surface criterion (k >= 2)", "g1", "g2", "d1", "d2", "k")
    query("product-surface", "Gaussian map of the product surface for K_X(C)", "g1", "g2", "d1", "d2", "k")
    query("product-bundle", "Gaussian map of L1 x L2 on a product of curves", "g1", "l1", "g2", "l2", "k")
    query("genus", "genus of a curve in |D1 x D2|", "g1", "g2", "d1", "d2")
    query("enriques", "Enriques phi criterion", "phi", "k")
    query("plane-formula", "closed-form plane-curve rank and corank", "d", "k")
    query("p2-corank", "corank of the restriction step", "k")
    einlaz = query("einlaz", "two-bundle degree bound on a curve", "g", "d", "m", "k")
    einlaz.add_argument("--hyperelliptic", choices=("yes", "no", "unknown"), default="unknown")
    sweep = query("sweep-min-genus", "minimal genus admitted by the product criterion", "g1", "g2", "k")
    sweep.add_argument("--bound", type=int, help="largest degree searched")
    crit.set_defaults(handler=cmd_criteria)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = load_yaml(args.config or DEFAULT_CONFIG_PATH)
    return with_overrides(
        cfg,
        command=args.command,
        output_format=args.format,
        output_path=args.output,
        threads=args.threads,
    )


def _curves(args: argparse.Namespace, cfg: RunConfig) -> List[PlaneCurve]:
    specs: List[str] = list(args.curve or [])
    degrees = parse_range(args.d, "--d") if args.d else []
    if not specs and not degrees:
        specs = list(cfg.curves)
        if not specs:
            degrees = cfg.d_range
    curves = [curve_from_spec(s) for s in specs]
    curves.extend(fermat_curve(d) for d in degrees)
    return curves


def cmd_plane(args: argparse.Namespace) -> int:
    cfg = _config(args)
    cfg = with_overrides(
        cfg,
        k_range=parse_range(args.k, "--k") if args.k else None,
        mode=args.mode,
        primes=parse_primes(args.primes) if args.primes else None,
        domain_method=args.domain,
    )
    curves = _curves(args, cfg)
    arithmetic = Arithmetic(cfg.mode, cfg.primes)
    jobs = make_plane_jobs(curves, cfg.k_range, arithmetic, cfg.domain_method)
    results = run_plane(jobs, resolve_threads(cfg))
    rows = reports.as_rows(results)
    reports.write_output(reports.render(rows, cfg.output_format, "plane"), cfg.output_path)
    failed = [r for r in results if r.in_theorem_range and not r.match]
    for r in failed:
        log.error("mismatch at d=%d k=%d: rank %d, predicted %s", r.d, r.k, r.rank, r.predicted_rank)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_p1(args: argparse.Namespace) -> int:
    cfg = _config(args)
    cfg = with_overrides(
        cfg,
        a_range=parse_range(args.a, "--a") if args.a else None,
        b_range=parse_range(args.b, "--b") if args.b else None,
        p1_k_range=parse_range(args.k, "--k") if args.k else None,
    )
    jobs = make_p1_jobs(cfg.a_range, cfg.b_range, cfg.p1_k_range)
    rows = run_p1(jobs, resolve_threads(cfg))
    reports.write_output(reports.render(rows, cfg.output_format, "p1"), cfg.output_path)
    return EXIT_OK if all(r["agree"] for r in rows) else EXIT_MISMATCH


def _hyperelliptic(text: str) -> Optional[bool]:
    return {"yes": True, "no": False}.get(text)


def _rational_text(value: Any) -> str:
    """Closed-form values are always emitted as "n" or "n/m" text."""
    return rat_text(to_rat(value))


def _answer(args: argparse.Namespace, cfg: RunConfig) -> Dict[str, Any]:
    q = args.query
    if q in ("product", "product-surface"):
        inputs = {"g1": args.g1, "g2": args.g2, "d1": args.d1, "d2": args.d2, "k": args.k}
        data = criteria.ProductData(**inputs)
        fn: Callable = criteria.product_predicate if q == "product" else criteria.product_surface_predicate
        result: Any = fn(data)
    elif q == "product-bundle":
        inputs = {"g1": args.g1, "l1": args.l1, "g2": args.g2, "l2": args.l2, "k": args.k}
        result = criteria.product_bundle_predicate(**inputs)
    elif q == "genus":
        inputs = {"g1": args.g1, "g2": args.g2, "d1": args.d1, "d2": args.d2}
        result = criteria.product_genus(**inputs)
    elif q == "enriques":
        inputs = {"phi": args.phi, "k": args.k}
        result = criteria.enriques_predicate(criteria.EnriquesData(**inputs))
    elif q == "plane-formula":
        inputs = {"d": args.d, "k": args.k}
        f = criteria.plane_rank_formula(args.d, args.k)
        result = {"rank": _rational_text(f.rank), "corank": _rational_text(f.corank), "valid": f.valid}
    elif q == "p2-corank":
        inputs = {"k": args.k}
        result = criteria.p2_corank_formula(args.k)
    elif q == "einlaz":
        inputs = {"g": args.g, "d": args.d, "m": args.m, "k": args.k, "hyperelliptic": args.hyperelliptic}
        result = criteria.einlaz_predicate(args.g, args.d, args.m, args.k, _hyperelliptic(args.hyperelliptic))
    else:
        bound = args.bound if args.bound is not None else cfg.sweep_bound
        inputs = {"g1": args.g1, "g2": args.g2, "k": args.k, "bound": bound}
        result = asdict(criteria.min_genus_sweep(args.g1, args.g2, args.k, bound))
    return reports.criteria_answer(q, inputs, result, STATEMENTS[q])


def cmd_criteria(args: argparse.Namespace) -> int:
    cfg = _config(args)
    answer = _answer(args, cfg)
    reports.write_output(reports.render_answer(answer, cfg.output_format), cfg.output_path)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose, args.quiet)
    try:
        return args.handler(args)
    except (WahlRankError, ValueError, OSError) as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
