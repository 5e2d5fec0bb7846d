"""Command-line surface.

Commands: exact, search, bounds, verify, nrc.  Exit codes: 0 ok,
1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import bounds as bnd
from . import tables
from .gf import factor_prime_power
from .geometry import build_conic_model
from .nrc import completeness_brute, corollary11_range, nrc_points, p0_solve
from .search import (DEFAULT_EXHAUSTIVE_CEILING, ENV_MAX_Q, exhaustive_min_ac,
                     is_ac_subset, randomized_greedy)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

FIG_GRIDS = {"fig1": 253009, "fig2": 14000029}


class CliError(Exception):
    pass


def _model_for(q):
    if factor_prime_power(q) is None:
        raise CliError(f"q={q} is not a prime power")
    return build_conic_model(q)


def cmd_exact(args) -> int:
    q = args.q
    if q < 5:
        raise CliError(f"q={q} < 5: outside the exact-search scope")
    ceiling = int(os.environ.get(ENV_MAX_Q, DEFAULT_EXHAUSTIVE_CEILING))
    if q > ceiling and not args.force:
        raise CliError(f"q={q} above exhaustive ceiling {ceiling} "
                       f"(use --force; budget grows to hours for q near 32)")
    model = _model_for(q)
    t, witness = exhaustive_min_ac(model, base_size=args.base_size,
                                   ceiling=ceiling, force=args.force)
    assert is_ac_subset(model, witness)
    names = ",".join(model.param_name(p) for p in witness)
    print(f"q={q} t={t} witness={names}")
    return EXIT_OK


def cmd_search(args) -> int:
    model = _model_for(args.q)
    start = time.time()
    res = randomized_greedy(model, seed=args.seed, restarts=args.restarts,
                            random_step_prob=args.prob, jobs=args.jobs)
    wall = time.time() - start
    if not is_ac_subset(model, res.witness):
        raise AssertionError("search produced a non-AC witness")
    print(res.witness_line(model))
    if args.record:
        record = {
            "command": "search",
            "parameters": {"q": args.q, "restarts": args.restarts,
                           "prob": args.prob, "jobs": args.jobs},
            "seed": args.seed,
            "wall_time_s": round(wall, 3),
            "outputs": {"witness_line": res.witness_line(model)},
            "tool_version": _version(),
        }
        with open(args.record, "w") as fh:
            json.dump(record, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def _parse_grid(args):
    if args.q is not None:
        return [args.q]
    if args.qlist:
        return [int(x) for x in args.qlist.split(",")]
    if args.grid:
        limit = FIG_GRIDS[args.grid]
        return bnd.prime_powers_up_to(limit)
    raise CliError("one of --q, --qlist, --grid is required")


def cmd_bounds(args) -> int:
    names = [n.strip() for n in args.names.split(",")]
    for n in names:
        if n not in bnd.BOUND_NAMES:
            raise CliError(f"unknown bound name {n!r}; choose from {bnd.BOUND_NAMES}")
    grid = _parse_grid(args)
    rows = bnd.curve_emit(grid, names)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        print("q,bound,value,value_star", file=out)
        for q, name, value, star in rows:
            print(f"{q},{name},{value:.12g},{star:.12g}", file=out)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.table:
        rows = tables.load_table_csv(args.table)
        label = args.table
    else:
        rows = tables.embedded_table2_rows() + tables.KNOWN_TBAR_SAMPLE
        label = "embedded tables"
    verdicts = tables.verify_rows(rows)
    failures = 0
    for v in verdicts:
        if v.ok:
            print(f"q={v.q} tbar={v.tbar} ok")
        else:
            failures += 1
            print(f"q={v.q} tbar={v.tbar} FAIL: {'; '.join(v.reasons)}")
    print(f"{label}: {len(verdicts) - failures}/{len(verdicts)} rows pass")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_nrc(args) -> int:
    if args.p0 is not None:
        entry = p0_solve(args.p0, c_override=args.c)
        print(f"h={entry.h} c={entry.c} p0={entry.p0}")
        return EXIT_OK
    if args.range is not None:
        q = args.range
        rng = corollary11_range(q)
        print(f"q={q} N-range={'empty' if rng is None else f'[{rng[0]},{rng[1]}]'}")
        return EXIT_OK
    if args.complete:
        q, n_dim = args.complete
        pm = factor_prime_power(q)
        if pm is None:
            raise CliError(f"q={q} is not a prime power")
        from .gf import field_new
        arc = nrc_points(field_new(*pm), n_dim)
        try:
            ext = completeness_brute(arc)
        except ValueError as e:
            raise CliError(str(e)) from e
        if not ext:
            print(f"q={q} N={n_dim}: complete")
        else:
            print(f"q={q} N={n_dim}: extendable by {len(ext)} point(s)")
        return EXIT_OK
    raise CliError("one of --p0, --range, --complete is required")


def _version() -> str:
    try:
        from importlib.metadata import version
        return version("conicac")
    except Exception:
        return "unknown"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ac",
                                 description="Almost-complete subsets of a conic in PG(2,q)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact minimum AC-subset size by exhaustive search")
    p.add_argument("q", type=int)
    p.add_argument("--force", action="store_true",
                   help="allow q above the exhaustive ceiling")
    p.add_argument("--base-size", type=int, default=6)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("search", help="randomized greedy search for small AC-subsets")
    p.add_argument("q", type=int)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--restarts", type=int, default=200)
    p.add_argument("--prob", type=float, default=0.1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--record", metavar="PATH", help="write a JSON run record")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", help="emit bound curves as CSV")
    p.add_argument("--q", type=int)
    p.add_argument("--qlist", help="comma-separated q values")
    p.add_argument("--grid", choices=sorted(FIG_GRIDS))
    p.add_argument("--names", default="A,B,C,theta")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="verify reference tables against Theta(q)")
    p.add_argument("table", nargs="?", help="CSV path (q,tbar[,tstar]); "
                   "defaults to the embedded tables")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("nrc", help="normal rational curve completeness tools")
    p.add_argument("--p0", type=int, metavar="H",
                   help="smallest odd prime threshold p0(h)")
    p.add_argument("--c", type=float, help="override the coefficient for --p0")
    p.add_argument("--range", type=int, metavar="Q",
                   help="guaranteed-complete N-range for q")
    p.add_argument("--complete", type=int, nargs=2, metavar=("Q", "N"),
                   help="brute-force completeness check of the NRC in PG(N,q)")
    p.set_defaults(func=cmd_nrc)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (CliError, tables.TableFormatError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
