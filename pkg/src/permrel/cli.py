"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 resource limit, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys

from . import counting, engine, perm, recurrences, tableaux, verify
from .errors import PermrelError, ResourceLimitError
from .partitions import make_cyclic, make_first_fixed, make_first_last, parse_partition

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_VERIFY = 0, 1, 2, 3

log = logging.getLogger("permrel")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _number(text: str) -> int:
    """Accept 1000000, 1e6, 1_000_000."""
    try:
        value = int(text.replace("_", ""))
    except ValueError:
        try:
            value = int(float(text))
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("budgets must be positive")
    return value


def env_budgets() -> dict:
    """Read PERMREL_BUDGET: a bare node budget, or ``nodes=..,max_n=..``."""
    raw = os.environ.get("PERMREL_BUDGET", "").strip()
    out = {}
    if not raw:
        return out
    for item in raw.split(","):
        key, _, val = item.rpartition("=")
        key = key.strip() or "nodes"
        if key not in ("nodes", "max_n"):
            raise UsageError(f"PERMREL_BUDGET: unknown key {key!r}")
        out[key] = _number(val.strip())
    return out


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _rows(text: str) -> list[tuple[int, int]]:
    rows = []
    for item in text.split(","):
        n, sep, c = item.strip().partition(":")
        if not sep or not n.isdigit() or not c.isdigit():
            raise UsageError(f"malformed row {item!r}; expected n:c")
        rows.append((int(n), int(c)))
    return rows


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _partition_from(args):
    chosen = [name for name in ("cyclic_id", "cyclic", "first_fixed", "first_last", "partition")
              if getattr(args, name)]
    if len(chosen) != 1:
        raise UsageError("choose exactly one of --cyclic-id, --cyclic, --first-fixed, --first-last, --partition")
    if args.cyclic:
        return make_cyclic(perm.parse_permutation(args.cyclic))
    if args.partition:
        return parse_partition(args.partition)
    if args.c is None:
        raise UsageError("--c is required for this family")
    if args.cyclic_id:
        return make_cyclic(perm.identity(args.c))
    if args.first_fixed:
        return make_first_fixed(args.c)
    return make_first_last(args.c)


# ------------------------------------------------------------- subcommands

def cmd_classes(args) -> int:
    K = _partition_from(args)
    max_n = args.max_n or env_budgets().get("max_n", engine.DEFAULT_MAX_N)
    if args.n > max_n:
        raise ResourceLimitError(f"n={args.n} exceeds the enumeration limit max_n={max_n}; raise --max-n")
    print(f"estimated memory: {engine.estimate_memory(args.n) / 2**20:.1f} MiB", file=sys.stderr)
    if args.members and args.n >= 9:
        print("warning: member dump for n >= 9 is large", file=sys.stderr)
    report = engine.enumerate_classes(args.n, K, max_n=max_n, threads=args.threads)
    if args.format == "json":
        _emit(args, _json(report.to_json(members=args.members, nontrivial_only=args.nontrivial_only)))
        return EXIT_OK
    classes = report.nontrivial() if args.nontrivial_only else range(report.class_count)
    buf = io.StringIO()
    if args.format == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rep", "size", "parity"])
        for i in classes:
            w.writerow([perm.format_word(report.representative(i)), report.size(i), report.parity_tag(i)])
    else:
        buf.write(f"S_{report.n} under {report.partition}: {report.class_count} classes, "
                  f"{report.avoiders} avoiders, {len(report.nontrivial())} nontrivial\n")
        for i in classes:
            buf.write(f"  {perm.format_word(report.representative(i))}  size={report.size(i)}  "
                      f"parity={report.parity_tag(i)}\n")
    _emit(args, buf.getvalue())
    return EXIT_OK


def _budget(args) -> int:
    return args.budget or env_budgets().get("nodes", counting.DEFAULT_BUDGET)


def cmd_table(args) -> int:
    rows = _rows(args.rows)
    table = counting.reproduce_table(rows, budget=_budget(args), threads=args.threads)
    if args.format == "json":
        _emit(args, _json([{"n": r.n, "c": r.c, "status": r.source,
                            **(r.census.to_json() if r.census else {})} for r in table]))
        return EXIT_OK
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "c", "even", "odd", "diff"])
    for r in table:
        w.writerow(r.csv_fields())
    _emit(args, buf.getvalue())
    return EXIT_OK


def cmd_count(args) -> int:
    q = counting.CountQuery(args.n, args.c, args.kind, args.begins_with, args.ends_with)
    if args.strategy == "scan":
        census = counting.scan_census(q)
    else:
        census = counting.count_filtered(q, budget=_budget(args), threads=args.threads)
    out = {"n": q.n, "c": q.c, "kind": q.kind, "begins_with": q.begins_with,
           "ends_with": q.ends_with, **census.to_json()}
    _emit(args, _json(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    kwargs = {}
    if args.max_n:
        kwargs["max_n"] = args.max_n
    if args.c:
        kwargs["c"] = args.c
    checks = verify.run(args.suite, **kwargs)
    _emit(args, "".join(ch.line() + "\n" for ch in checks))
    failed = [ch for ch in checks if not ch.passed]
    if failed:
        print(f"{len(failed)} check(s) failed", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_recurrence(args) -> int:
    family = recurrences.FIRST_LAST if args.first_last else recurrences.FIRST_FIXED
    values = recurrences.context(args.c).sequence(family, args.upto)
    _emit(args, json.dumps([str(v) for v in values]) + "\n")
    return EXIT_OK


def cmd_conjecture(args) -> int:
    records = counting.conjecture_scan(_int_list(args.c_list), k=args.k, budget=_budget(args),
                                       threads=args.threads, use_published_values=args.use_published_values)
    _emit(args, _json(records))
    return EXIT_OK


def cmd_bijection(args) -> int:
    if args.m is not None:
        rows = []
        for t in tableaux.enumerate_tableaux(args.m):
            path = tableaux.tableau_to_path(t)
            rows.append({"tableau": t.to_json(), "reading_word": perm.format_word(tableaux.reading_word(t)),
                         "parity": perm.parity(tableaux.reading_word(t)), "path": path,
                         "area": tableaux.area_above(path), "involution": tableaux.x_involution(path)})
        _emit(args, _json({"m": args.m, "entries": rows}))
        return EXIT_OK
    if args.n is None or args.c is None:
        raise UsageError("bijection needs either --m, or both --n and --c")
    q = counting.CountQuery(args.n, args.c, counting.HIT_HUGGER, ends_with=args.n)
    rows = []
    for p in counting.list_matching(q):
        t = tableaux.hugger_to_tableau(p, args.c)
        path = tableaux.tableau_to_path(t)
        rows.append({"hugger": perm.format_word(p), "parity": perm.parity(p), "tableau": t.to_json(),
                     "path": path, "area": tableaux.area_above(path)})
    _emit(args, _json({"n": args.n, "c": args.c, "entries": rows}))
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="permrel", description="Pattern-replacement equivalence classes on permutations.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt=None, choices=("json",)):
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        sp.add_argument("--threads", type=int, default=1, help="worker threads (1 = reference mode)")
        if fmt:
            sp.add_argument("--format", choices=choices, default=fmt)

    sp = sub.add_parser("classes", help="enumerate equivalence classes of S_n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--c", type=int)
    sp.add_argument("--cyclic-id", action="store_true", help="cyclic shifts of the identity of size c")
    sp.add_argument("--cyclic", metavar="M", help="cyclic shifts of the pattern M")
    sp.add_argument("--first-fixed", action="store_true", help="S_{c+1} permutations beginning with 1")
    sp.add_argument("--first-last", action="store_true", help="...beginning with 1 | ending with 1")
    sp.add_argument("--partition", help='custom partition, e.g. "{123,321}{132,231}"')
    sp.add_argument("--members", action="store_true", help="include every class member")
    sp.add_argument("--nontrivial-only", action="store_true")
    sp.add_argument("--max-n", type=int, help=f"enumeration limit (default {engine.DEFAULT_MAX_N})")
    common(sp, "json", ("json", "csv", "text"))
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("table", help="even/odd hit-huggers beginning with 1")
    sp.add_argument("--rows", required=True, help="comma-separated n:c pairs, e.g. 11:5,13:5")
    sp.add_argument("--budget", type=_number, help="search-node budget per row")
    common(sp, "csv", ("csv", "json"))
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("count", help="parity census of one query")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--kind", choices=counting.KINDS, required=True)
    sp.add_argument("--begins-with", type=int)
    sp.add_argument("--ends-with", type=int)
    sp.add_argument("--strategy", choices=("backtrack", "scan"), default="backtrack")
    sp.add_argument("--budget", type=_number)
    common(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("verify", help="run named verification suites")
    sp.add_argument("--suite", action="append", default=[], help=f"one of {sorted(verify.SUITES)} or all")
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--c", type=int)
    sp.add_argument("--seed", type=int, default=0, help="reserved for randomized suites")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("recurrence", help="class counts f(1..N) from the recurrences")
    fam = sp.add_mutually_exclusive_group(required=True)
    fam.add_argument("--first-fixed", action="store_true")
    fam.add_argument("--first-last", action="store_true")
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--upto", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_recurrence)

    sp = sub.add_parser("conjecture", help="scan hugger differences at n = 2c + k")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--c-list", required=True, help="comma-separated odd c values")
    sp.add_argument("--budget", type=_number)
    sp.add_argument("--use-published-values", action="store_true",
                    help="fall back to the published table for rows over budget")
    common(sp)
    sp.set_defaults(func=cmd_conjecture)

    sp = sub.add_parser("bijection", help="dump hugger/tableau/path correspondences")
    sp.add_argument("--n", type=int)
    sp.add_argument("--c", type=int)
    sp.add_argument("--m", type=int, help="dump all 2 x m tableaux and their paths instead")
    common(sp)
    sp.set_defaults(func=cmd_bijection)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"permrel: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, PermrelError, ValueError) as exc:
        print(f"permrel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
