"""Command-line front end.

Exit codes: 0 exact/valid, 2 cutoff or lower bound only, 3 violation or
unexpected table mismatch, 4 parse or I/O error, 5 cache inconsistency.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__, certificates
from .bounds import (
    TABLE_SEARCH,
    AxiomSet,
    generate_table,
    load_reference,
    table_to_csv,
    table_to_json,
    unexpected_mismatches,
)
from .cache import CacheEntry, CacheInconsistencyError, ResultCache
from .certificates import Certificate, CertificateError
from .colorings import GammaParams, gamma_prefix
from .core import FamilyParams, verify_coloring
from .rado import regularity_necessary, triple_equation
from .solver import SearchConfig, find_n

EXIT_OK = 0
EXIT_CUTOFF = 2
EXIT_VIOLATION = 3
EXIT_PARSE = 4
EXIT_INCONSISTENT = 5

log = logging.getLogger("vdwtriples")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would exit with 2, which is reserved for cutoffs
    def error(self, message: str):
        raise UsageError(message)


def _family(args) -> FamilyParams:
    try:
        return FamilyParams(args.a, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_solve(args) -> int:
    params = _family(args)
    if args.r < 1:
        raise UsageError("--r must be positive")
    try:
        cfg = SearchConfig(
            max_n=args.max_n,
            node_budget=args.budget,
            parallel_width=args.workers,
            incremental=args.incremental,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.max_n < params.b + 2:
        raise UsageError(f"--max-n must be at least b + 2 = {params.b + 2}")

    res = find_n(params, args.r, cfg)
    cache = None if args.no_cache else ResultCache(args.cache_dir)
    if args.cert:
        cert_path = Path(args.cert)
    elif cache is not None:
        cert_path = cache.cert_path(params.a, params.b, args.r, res.lower)
    else:
        cert_path = None

    label = f"n({params.a},{params.b};{args.r})"
    if cert_path is not None:
        note = f"valid {args.r}-coloring of [1,{res.lower}]: {label} > {res.lower}"
        certificates.write(Certificate(params, res.witness, (note,)), cert_path)
        print(f"certificate: {cert_path}", file=sys.stderr)
    print(f"nodes: {res.nodes}", file=sys.stderr)

    if cache is not None:
        entry = CacheEntry(
            params.a,
            params.b,
            args.r,
            "exact" if res.exact else "lower",
            res.value if res.exact else res.lower,
            str(cert_path) if cert_path else "",
        )
        cache.record(entry)

    if res.exact:
        print(res.value)
        return EXIT_OK
    why = " (node budget exhausted)" if res.cutoff else ""
    print(f"n > {res.lower}{why}")
    return EXIT_CUTOFF


def cmd_verify(args) -> int:
    cert = certificates.read(args.cert)
    family = cert.family
    if args.a is not None or args.b is not None:
        family = _family(args)
    if family is None:
        raise CertificateError("certificate names no family; pass --a and --b")
    verdict = verify_coloring(family, cert.coloring)
    if verdict.valid:
        print(f"valid: no monochromatic {family}-triple in [1,{cert.n}] with {cert.r} colors")
        return EXIT_OK
    t = verdict.violation
    print(f"violation: {t.as_tuple()} (x={t.x}, d={t.d}) is monochromatic")
    return EXIT_VIOLATION


def cmd_gamma(args) -> int:
    try:
        gp = GammaParams(args.c)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.n < 1:
        raise UsageError("--n must be positive")
    family = None if args.a is None and args.b is None else _family(args)
    coloring = gamma_prefix(gp, args.n)
    cert = Certificate(family, coloring, (f"block coloring, c={gp.c}, p={gp.num}/{gp.den}",))
    if args.out:
        certificates.write(cert, args.out)
        report = sys.stdout
    else:
        sys.stdout.write(certificates.dumps(cert))
        report = sys.stderr
    if family is None:
        return EXIT_OK
    verdict = verify_coloring(family, coloring)
    if verdict.valid:
        print(f"valid: no monochromatic {family}-triple in [1,{args.n}]", file=report)
        return EXIT_OK
    print(f"violation: {verdict.violation.as_tuple()}", file=report)
    return EXIT_VIOLATION


def cmd_rado(args) -> int:
    params = _family(args)
    eq = triple_equation(params)
    verdict = regularity_necessary(params)
    print(f"equation: {eq}  (coefficients {list(eq.coefficients)} on x, y, z)")
    print(f"rado condition: {'true' if verdict else 'false'}")
    if not verdict:
        print(f"{params} is not regular")
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.axioms == "none":
        axioms = AxiomSet()
    elif args.axioms is None:
        axioms = AxiomSet.shipped()
    else:
        try:
            axioms = AxiomSet.load(args.axioms)
        except FileNotFoundError:
            print(f"warning: axiom file {args.axioms} not found; using none", file=sys.stderr)
            axioms = AxiomSet()
    reference = None if args.reference == "none" else load_reference(args.reference)
    search = None
    if args.search:
        search = SearchConfig(
            max_n=args.max_n, node_budget=args.budget, incremental=True
        )
    records = generate_table(
        args.a_max,
        args.b_max,
        axioms,
        search,
        reference,
        gap_max=args.gap_max,
        max_search_r=args.max_r,
    )
    out = table_to_json(records) + "\n" if args.format == "json" else table_to_csv(records)
    sys.stdout.write(out)
    bad = unexpected_mismatches(records)
    for rec in bad:
        print(f"unexpected mismatch at ({rec.a},{rec.b}): {rec.flags}", file=sys.stderr)
    return EXIT_VIOLATION if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vdwtriples", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="compute n(a,b;r)")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--max-n", type=int, default=2000)
    s.add_argument("--budget", type=int, default=None, help="node budget per decision")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--incremental", action="store_true", help="resume from the previous witness")
    s.add_argument("--cert", help="certificate path (default: inside the cache directory)")
    s.add_argument("--cache-dir", default=None)
    s.add_argument("--no-cache", action="store_true")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a certificate")
    v.add_argument("cert")
    v.add_argument("--a", type=int)
    v.add_argument("--b", type=int)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gamma", help="emit the block coloring with c colors")
    g.add_argument("--c", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--a", type=int)
    g.add_argument("--b", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gamma)

    r = sub.add_parser("rado", help="single-equation regularity test for (a,b)")
    r.add_argument("--a", type=int, required=True)
    r.add_argument("--b", type=int, required=True)
    r.set_defaults(func=cmd_rado)

    t = sub.add_parser("bounds", help="table of bounds on dor(a,b)")
    t.add_argument("--a-max", type=int, default=3)
    t.add_argument("--b-max", type=int, default=11)
    t.add_argument("--gap-max", type=int, default=8, help="only rows with b - a <= this")
    t.add_argument("--axioms", default=None, help="axiom file, or 'none' (default: shipped)")
    t.add_argument("--reference", default=None, help="reference CSV, or 'none' (default: shipped)")
    t.add_argument("--search", dest="search", action="store_true", default=True)
    t.add_argument("--no-search", dest="search", action="store_false")
    t.add_argument("--max-r", type=int, default=3)
    t.add_argument("--max-n", type=int, default=TABLE_SEARCH.max_n)
    t.add_argument("--budget", type=int, default=TABLE_SEARCH.node_budget)
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.set_defaults(func=cmd_bounds)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (CertificateError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CacheInconsistencyError as exc:
        print(f"inconsistent cache: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
