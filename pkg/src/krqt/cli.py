"""Command-line entry point: ``krqt char | verify | tables``.

Every report is one JSON object per line with sorted keys, so identical
invocations give byte-identical output.  Exit status is 0 when every check
passes, 1 when one fails, and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import itertools
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .cache import cached_character
from .cluster import (
    ClusterIndex,
    UsageWindow,
    a1_tables,
    compatibility_check,
    dump_json,
    k_direction_counterexample,
    verify_commute,
    verify_quantum_mutation,
    verify_t_system,
    window_indices,
)
from .exchange import verify_exchange_pairing
from .tableaux import KrLabel, fundamental_cluster, q_character
from .ylattice import QtCharacter, TLaurent, YMonomial

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_jobs() -> int:
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:
        return os.cpu_count() or 1


# formatting -----------------------------------------------------------------

def format_monomial(m: YMonomial) -> str:
    if m.is_one():
        return "1"
    parts = []
    for (i, j), e in m.items:
        parts.append(f"Y[{i},{j}]" if e == 1 else f"Y[{i},{j}]^{e}")
    return " ".join(parts)


def format_laurent(c: TLaurent) -> str:
    if c == TLaurent.one():
        return ""
    parts = []
    for e, k in c.items:
        coeff = "" if k == 1 else ("-" if k == -1 else str(k))
        parts.append(f"{coeff}t^{e}" if e else str(k))
    return "(" + " + ".join(parts) + ") "


def pretty_character(chi: QtCharacter) -> str:
    return "\n".join(format_laurent(c) + format_monomial(m) for m, c in chi.terms)


def character_json(label: KrLabel, chi: QtCharacter) -> dict:
    return {
        "label": {"r": label.r, "i": label.i, "j": label.j, "k": label.k},
        "dominant": chi.dominant.to_json(),
        "terms": [[m.to_json(), c.to_json()] for m, c in chi.terms],
        "count": len(chi.terms),
    }


# verify tasks -----------------------------------------------------------------

def _task_commute(r, a, b):
    return verify_commute(ClusterIndex(*a), ClusterIndex(*b), r).to_json()


def _task_tsystem(r, i, k, j):
    return verify_t_system(r, i, k, j).to_json()


def _task_mutation(r, i, k, j):
    return verify_quantum_mutation(r, i, k, j).to_json()


def _task_compat(r, k_max):
    rep = compatibility_check(r, k_max)
    return {"check": "compat", "params": {"r": r, "k_max": k_max}, "pass": rep.passed, "witness": rep.to_json()}


def _task_pairing(r, a, b, policy):
    return verify_exchange_pairing(KrLabel(r, *a), KrLabel(r, *b), policy).to_json()


def _task_counterexample():
    return k_direction_counterexample().to_json()


def _timed(task):
    fn, args = task
    start = time.perf_counter()
    out = fn(*args)
    out["wall_time"] = round(time.perf_counter() - start, 6)
    return out


def _plain(task):
    fn, args = task
    return fn(*args)


def tsystem_grid(r: int, k_max: int, j_window: int):
    """``(i, k, j)`` with ``1-i-j`` even and ``|j| <= j_window``."""
    for i in range(1, r + 1):
        for k in range(1, k_max + 1):
            for j in range(-j_window, j_window + 1):
                if (1 - i - j) % 2 == 0:
                    yield i, k, j


def build_tasks(args) -> list:
    check = args.check
    if check == "counterexample":
        return [(_task_counterexample, ())]
    r, k_max = args.rank, args.kmax
    if r < 1 or k_max < 1:
        raise UsageError("--rank and --kmax must be positive")
    if check == "commute":
        idx = [(x.i, x.k) for x in window_indices(r, k_max)]
        return [(_task_commute, (r, a, b)) for a, b in itertools.combinations(idx, 2)]
    if check in ("tsystem", "mutation"):
        if args.jwindow < 0:
            raise UsageError("--jwindow must be non-negative")
        fn = _task_tsystem if check == "tsystem" else _task_mutation
        return [(fn, (r, i, k, j)) for i, k, j in tsystem_grid(r, k_max, args.jwindow)]
    if check == "compat":
        if k_max < 2:
            raise UsageError("compat needs --kmax >= 2")
        return [(_task_compat, (r, k_max))]
    if check == "thm31":
        labels = [(x.i, x.j, x.k) for x in fundamental_cluster(r, k_max)]
        return [(_task_pairing, (r, a, b, args.policy)) for a, b in itertools.product(labels, repeat=2)]
    raise UsageError(f"unknown check {check}")


def run_tasks(tasks, jobs: int, timing: bool) -> list[dict]:
    runner = _timed if timing else _plain
    if jobs <= 1 or len(tasks) <= 1:
        return [runner(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(runner, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


# commands -------------------------------------------------------------------

def cmd_char(args, out) -> int:
    label = KrLabel(args.rank, args.i, args.j, args.k)
    chi = q_character(label) if args.no_cache else cached_character(label)
    if args.format == "pretty":
        print(pretty_character(chi), file=out)
    else:
        print(dump_json(character_json(label, chi)), file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    reports = run_tasks(build_tasks(args), args.jobs, args.timing)
    for rep in reports:
        print(dump_json(rep), file=out)
    failed = sum(not rep["pass"] for rep in reports)
    print(dump_json({"summary": args.check, "total": len(reports), "failed": failed}), file=out)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_tables(args, out) -> int:
    if args.rank != 1:
        raise UsageError("tables are only defined for --rank 1")
    t = a1_tables(args.n)
    data = t.to_json()
    data["B_matches_closed_form"] = t.b_matches
    data["epsilon_matches_closed_form"] = t.eps_matches
    if args.format == "pretty":
        for name in ("B", "epsilon"):
            print(name, file=out)
            for row in data[name]:
                print(" ".join(f"{v:>2}" for v in row), file=out)
        print(f"closed forms match: B={t.b_matches} epsilon={t.eps_matches}", file=out)
    else:
        print(dump_json(data), file=out)
    return EXIT_OK if t.b_matches and t.eps_matches else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krqt", description="(q,t)-characters of type A KR-modules")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("char", help="print the character of W^{(i)}_{k,j}")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.add_argument("--no-cache", action="store_true", help="skip the on-disk cache")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("verify", help="run one family of checks")
    p.add_argument("check", choices=("commute", "tsystem", "mutation", "compat", "thm31", "counterexample"))
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--jwindow", type=int, default=4)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--policy", choices=("maximal", "minimal"), default="maximal", help="sigma pairing rule for the exchange check")
    p.add_argument("--timing", action="store_true", help="add wall_time to each report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tables", help="A1 exchange and epsilon windows")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, UsageWindow, ValueError) as exc:
        print(f"krqt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
