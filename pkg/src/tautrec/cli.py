"""Command-line front end: exact bracket evaluation, value tables, the
verification suites, and a JSON-lines result cache.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 undefined
moduli space, 4 I/O or cache-parse error.  Results go to stdout only;
diagnostics go to stderr.  Every value is printed as an exact fraction in
decimal strings; no floating point appears anywhere.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import oracle
from .brackets import (
    BracketKey,
    MemoCache,
    ZeroSentinel,
    canonical_key,
    descending,
    eval_bracket,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_UNDEFINED = 3
EXIT_IO = 4


class CacheError(ValueError):
    """A cache file line that cannot be trusted; message carries the line."""


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _as_int(x) -> int:
    if not isinstance(x, (str, int)) or isinstance(x, bool):
        raise ValueError("num and den must be decimal strings")
    return int(x)


def cache_load(path) -> MemoCache:
    """Read a JSON-lines cache into a fresh memo table.

    Every line must parse on its own and duplicate keys must agree; a bad
    line raises :class:`CacheError` naming its 1-based line number instead
    of being skipped.
    """
    cache = MemoCache()
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.strip()
            if not line:
                continue
            try:
                entry = json.loads(line)
                m, ct, exps = entry["m"], entry["ct"], entry["exps"]
                if not all(_is_int(x) for x in (m, ct, *exps)):
                    raise ValueError("m, ct and exps must be integers")
                num, den = _as_int(entry["num"]), _as_int(entry["den"])
                if den <= 0:
                    raise ValueError("denominator must be a positive integer")
                key = canonical_key(m, ct, exps)
                if isinstance(key, ZeroSentinel):
                    raise ValueError("key fails the vanishing gate")
                cache.put(key, Fraction(num, den))
            except (KeyError, TypeError, ValueError) as exc:
                raise CacheError(f"{path}: line {lineno}: {exc}") from exc
    return cache


def cache_store(cache: MemoCache, path) -> None:
    """Write the memo table as sorted JSON lines, one bracket per line."""
    rows = sorted(
        cache.items(), key=lambda kv: (kv[0].m, kv[0].n, kv[0].exps, kv[0].c_tilde)
    )
    with open(path, "w", encoding="utf-8") as handle:
        for key, value in rows:
            handle.write(
                json.dumps(
                    {
                        "m": key.m,
                        "ct": key.c_tilde,
                        "exps": list(key.exps),
                        "num": str(value.numerator),
                        "den": str(value.denominator),
                    },
                    separators=(",", ":"),
                )
                + "\n"
            )


def _parse_psi(text: str) -> tuple[int, ...]:
    if text.strip() == "":
        return ()
    try:
        return tuple(int(token) for token in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--psi expects comma-separated integers, got {text!r}")


def _table_keys(max_dim: int):
    # deterministic row order: m ascending, n ascending, exponents lexicographic
    for m in range(0, max_dim + 1):
        for n in range(0, max_dim - m + 1):
            if m + n == 0:
                continue
            keys = [
                BracketKey(m, m + n - sum(exps), exps)
                for ct in range(0, m + n + 1)
                for exps in oracle.exponent_tuples(m + n - ct, n)
            ]
            yield from sorted(keys, key=lambda k: k.exps)


def cmd_eval(args) -> int:
    if args.i_points < 0:
        print("tautrec: --i-points must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        exps = _parse_psi(args.psi)
    except argparse.ArgumentTypeError as exc:
        print(f"tautrec: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.i_points + len(exps) == 0:
        print("tautrec: a moduli space needs at least one marked point", file=sys.stderr)
        return EXIT_UNDEFINED
    # the reduction depth grows with the dimension; cap the bump so absurd
    # inputs fail with RecursionError instead of exhausting the C stack
    wanted = min(4 * (args.i_points + len(exps)) + 1000, 10000)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), wanted))
    key = canonical_key(args.i_points, args.c_tilde, exps)
    if isinstance(key, ZeroSentinel):
        shown, value = descending(exps), Fraction(0)
    else:
        shown, value = key.exps, eval_bracket(key)
    print(
        json.dumps(
            {
                "m": args.i_points,
                "ctilde": args.c_tilde,
                "exps": list(shown),
                "num": str(value.numerator),
                "den": str(value.denominator),
            },
            separators=(",", ":"),
        )
    )
    return EXIT_OK


def cmd_table(args) -> int:
    if args.max_dim < 1:
        print("tautrec: --max-dim must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    cache_path = args.cache or os.environ.get("TAUTREC_CACHE")
    cache = MemoCache()
    if cache_path and os.path.exists(cache_path):
        cache = cache_load(cache_path)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["m", "ctilde", "exps", "num", "den"])
    for key in _table_keys(args.max_dim):
        value = eval_bracket(key, cache)
        writer.writerow(
            [
                key.m,
                key.c_tilde,
                ",".join(str(c) for c in key.exps),
                str(value.numerator),
                str(value.denominator),
            ]
        )
    if cache_path:
        cache_store(cache, cache_path)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "corollary":
        report = oracle.verify_corollary(args.max_i, args.max_j)
    elif args.suite == "confluence":
        report = oracle.verify_confluence(args.samples, args.seed, args.max_dim)
    elif args.suite == "strata":
        report = oracle.verify_strata(args.max_size)
    else:
        report = oracle.verify_bases(args.limit)
    print(report.to_json())
    return EXIT_OK if report.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tautrec",
        description="exact tautological intersection numbers on genus-one moduli"
        " spaces and their blowups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one bracket, print JSON")
    pe.add_argument("--i-points", type=int, required=True, metavar="M",
                    help="number of blown-up marked points")
    pe.add_argument("--c-tilde", type=int, required=True, metavar="C",
                    help="exponent of the universal psi class (of lambda when M = 0)")
    pe.add_argument("--psi", nargs="?", const="", default="", metavar="E1,E2,...",
                    help="comma-separated psi exponents; may be empty")
    pe.set_defaults(func=cmd_eval)

    pt = sub.add_parser("table", help="print a CSV of every bracket up to a dimension")
    pt.add_argument("--max-dim", type=int, required=True, metavar="D")
    pt.add_argument("--cache", metavar="PATH",
                    help="JSON-lines cache to seed from and persist to"
                    " (TAUTREC_CACHE is equivalent)")
    pt.set_defaults(func=cmd_table)

    pv = sub.add_parser("verify", help="run a verification suite, print its report")
    vsub = pv.add_subparsers(dest="suite", required=True)
    vc = vsub.add_parser("corollary", help="closed form vs recursion")
    vc.add_argument("--max-i", type=int, default=6)
    vc.add_argument("--max-j", type=int, default=6)
    vf = vsub.add_parser("confluence", help="grouped vs per-point evaluation")
    vf.add_argument("--samples", type=int, default=200)
    vf.add_argument("--seed", type=int, default=42)
    vf.add_argument("--max-dim", type=int, default=10)
    vs = vsub.add_parser("strata", help="exhaustive strata structure checks")
    vs.add_argument("--max-size", type=int, default=6)
    vb = vsub.add_parser("bases", help="string/dilaton base cases")
    vb.add_argument("--limit", type=int, default=8)
    for p in (vc, vf, vs, vb):
        p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CacheError, OSError) as exc:
        print(f"tautrec: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
