"""Command-line entry point.

Exit codes: 0 success, 1 negative result, 2 usage error, 3 budget ran out
before the search finished (value is only a lower bound).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from forbconf.engine import SearchConfig
from forbconf.family_spec import SpecError, parse_terms
from forbconf.growth import CLAIMS, ResultCache, cached_forb, run_growth
from forbconf.matrix import MatrixFormatError, format_matrix, parse_matrix
from forbconf.patterns import contains
from forbconf.prooflab import extract_config_from_template, pair_times, standard_decomposition

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INEXACT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _read_matrix(path: str):
    try:
        return parse_matrix(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except (MatrixFormatError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _cfg(args) -> SearchConfig:
    try:
        return SearchConfig(
            node_budget=args.budget_nodes,
            time_budget=args.budget_seconds,
            jobs=args.jobs,
            symbol_symmetry=args.symmetry,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_contains(args) -> int:
    A, F = _read_matrix(args.A), _read_matrix(args.F)
    w = contains(A, F)
    if w is None:
        _emit({"contained": False})
        return EXIT_NEGATIVE
    _emit({"contained": True, "witness": w.to_json()})
    return EXIT_OK


def cmd_forb(args) -> int:
    cache = None if args.no_cache else ResultCache(args.cache)
    res = cached_forb(args.m, args.r, args.family, args.k, _cfg(args), cache)
    out = res.to_json()
    if not res.exact:
        out["lower_bound"] = out.pop("value")
        _emit(out)
        print("search budget exhausted: value is a lower bound only", file=sys.stderr)
        return EXIT_INEXACT
    _emit(out)
    return EXIT_OK


def cmd_growth(args) -> int:
    if args.m_from > args.m_to:
        raise UsageError("--m-from must not exceed --m-to")
    cache = None if args.no_cache else ResultCache(args.cache)
    rep = run_growth(args.family, args.r, range(args.m_from, args.m_to + 1), _cfg(args), cache, args.claim, args.fit_window)
    out = rep.to_json()
    out["csv"] = rep.to_csv()
    if args.csv:
        Path(args.csv).write_text(rep.to_csv())
    _emit(out)
    if rep.fit_status.startswith("refused"):
        print("no exact values: exponent fit refused", file=sys.stderr)
        return EXIT_INEXACT
    return EXIT_OK


def cmd_gen(args) -> int:
    mats = parse_terms(args.spec)
    if args.family:
        from forbconf.patterns import ConfigFamily

        mats = list(ConfigFamily.of(mats, args.r).members)
    chunks = []
    for idx, M in enumerate(mats):
        if args.r is not None:
            M = M.with_alphabet(args.r)
        chunks.append(f"# member {idx}\n" + format_matrix(M))
    sys.stdout.write("".join(chunks))
    return EXIT_OK


def cmd_decompose(args) -> int:
    A = _read_matrix(args.A)
    if not 0 <= args.row < A.m:
        raise UsageError(f"row {args.row} out of range for a {A.m}-rowed matrix")
    dec = standard_decomposition(A, args.row, check=False)
    out = dec.to_json()
    out["C_contained"] = {
        f"{a},{b}": contains(A, pair_times(a, b, C)) is not None for (a, b), C in dec.C_parts.items() if C.n
    }
    _emit(out)
    return EXIT_OK if dec.inequality_holds else EXIT_NEGATIVE


def cmd_extract(args) -> int:
    G = _read_matrix(args.G)
    res = extract_config_from_template(G, args.x, args.ell, args.s)
    out = res.to_json()
    if res.witness is not None:
        out["witness_valid"] = contains(G, res.found) is not None and res.witness.verify(G, res.found)
    _emit(out)
    return EXIT_OK if res.success else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="forbconf", description="Forbidden configurations of r-matrices.")
    p.add_argument("--seed", type=int, default=None, help="reserved; the engine is deterministic")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("contains", help="is F a configuration of A?")
    s.add_argument("A")
    s.add_argument("F")
    s.set_defaults(func=cmd_contains)

    def search_opts(sp):
        sp.add_argument("--budget-nodes", type=int, default=None)
        sp.add_argument("--budget-seconds", type=float, default=None)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--symmetry", action="store_true", help="use symbol-permutation symmetry breaking")
        sp.add_argument("--cache", default=None, help="cache file (default: $FORBCONF_CACHE or .forbcache.jsonl)")
        sp.add_argument("--no-cache", action="store_true")

    s = sub.add_parser("forb", help="exact forb(m, r, family)")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--family", required=True)
    s.add_argument("--k", type=int, default=None, help="restrict to columns with exactly k ones")
    search_opts(s)
    s.set_defaults(func=cmd_forb)

    s = sub.add_parser("growth", help="forb over a range of m with an exponent fit")
    s.add_argument("--family", required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--m-from", type=int, required=True)
    s.add_argument("--m-to", type=int, required=True)
    s.add_argument("--claim", choices=sorted(CLAIMS), default=None)
    s.add_argument("--csv", default=None, help="also write m,value,exact CSV here")
    s.add_argument("--fit-window", type=int, default=None, help="fit only the last W exact points")
    search_opts(s)
    s.set_defaults(func=cmd_growth)

    s = sub.add_parser("gen", help="print the matrices of a family spec")
    s.add_argument("spec")
    s.add_argument("--r", type=int, default=None)
    s.add_argument("--family", action="store_true", help="deduplicate up to row/column permutation")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("decompose", help="standard decomposition of A by a row")
    s.add_argument("--row", type=int, required=True)
    s.add_argument("A")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("extract", help="extract a configuration from a P-template")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--s", type=int, default=2)
    s.add_argument("G")
    s.set_defaults(func=cmd_extract)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SpecError, MatrixFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
