"""Command-line front end: spt values, statistic tables, the check catalog, bijection tables.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
import unicodedata
from typing import Optional, Sequence

from .bijections import iter_D, phi, psi
from .counting import VARIANTS, spt_counts
from .identities import CATALOG, run_check
from .partitions import format_partition
from .spt_models import crank_bar, iter_marked_overpartitions, k_partition, marked_row
from .tables import NSB_FAMILIES, canonical_family, nsb_table, stat_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TABLE_FAMILIES = ("Nbar", "Mbar", "N2", "M2", "NSbar", "NSbar1", "NSbar2", "NS2bar")


class UsageError(Exception):
    pass


# -- payload builders -----------------------------------------------------------
# each returns (columns, rows, extra) where rows are lists of JSON-ready values


def spt_rows(variant: str, n_max: int):
    values = spt_counts(variant, n_max)
    return ["n", "value"], [[n, values[n]] for n in range(1, n_max + 1)]


def table_rows(family: str, n_max: int, t: Optional[int]):
    try:
        family = canonical_family(family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if family not in TABLE_FAMILIES:
        raise UsageError(f"family must be one of {TABLE_FAMILIES}")
    tab = nsb_table(family, n_max) if family in NSB_FAMILIES else stat_table(family, n_max)
    if t is None:
        return ["m", "n", "value"], [[m, n, v] for m, n, v in tab.entries()]
    if t < 1:
        raise UsageError("--t must be positive")
    rows = [[k, t, n, tab.class_sum(k, t, n)] for n in range(n_max + 1) for k in range(t)]
    return ["k", "t", "n", "value"], rows


def phi_rows(n: int):
    cols = ["pi", "j", "pi1", "pi2", "nu", "k", "kbar", "sptcrank", "image", "crank_bar"]
    rows = []
    for mop in iter_marked_overpartitions(n):
        r = marked_row(mop)
        pair = phi(mop)
        rows.append([r["pi"], r["j"], r["pi1"], r["pi2"], r["nu"], r["k"], r["kbar"], r["sptcrank"],
                     str(pair), crank_bar(pair)])
    return cols, rows


def psi_rows(n: int, ell: int):
    cols = ["pi", "image", "k", "small_parts"]
    rows = []
    for pi in iter_D(n, ell):
        lam = psi(n, pi)
        rows.append([format_partition(pi), format_partition(lam), k_partition(pi, n),
                     sum(1 for x in lam if x <= 2 * n - 1)])
    return cols, rows


# -- encoders -------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if v is None:
        return ""
    return str(v)


def _width(text: str) -> int:
    return sum(1 for ch in text if not unicodedata.combining(ch))


def _pad(text: str, width: int) -> str:
    return text + " " * (width - _width(text))


def encode(fmt: str, command: str, params: dict, columns, rows, metadata: dict) -> str:
    if fmt == "json":
        doc = {
            "command": command,
            "params": params,
            "columns": columns,
            "rows": rows,
            "metadata": metadata,
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(v) for v in r])
        return buf.getvalue()
    widths = [max([_width(c)] + [_width(_cell(r[i])) for r in rows]) for i, c in enumerate(columns)]
    lines = ["  ".join(_pad(c, w) for c, w in zip(columns, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(_pad(_cell(v), w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _witness_cells(report) -> list:
    w = report.witness
    if w is None:
        return [None, None, None, None]
    d = w.to_dict()
    return [d["n"], d["m"], d["expected"], d["got"]]


# -- commands -------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="overspt", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--output", "-o", help="write data here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spt", parents=[common], help="smallest-parts counts")
    sp.add_argument("--variant", choices=VARIANTS, default="spt")
    sp.add_argument("--n-max", type=int, required=True)

    tp = sub.add_parser("table", parents=[common], help="two-variable statistic tables")
    tp.add_argument("--family", required=True, help=f"one of {', '.join(TABLE_FAMILIES)} (unicode names accepted)")
    tp.add_argument("--n-max", type=int, required=True)
    tp.add_argument("--t", type=int, help="emit class sums modulo t instead of (m, n, value)")

    vp = sub.add_parser("verify", parents=[common], help="run identity checks")
    vp.add_argument("ids", nargs="*", help="check ids; see --list")
    vp.add_argument("--all", action="store_true", help="run every check")
    vp.add_argument("--list", action="store_true", help="list check ids and exit")
    vp.add_argument("--order", "--n-max", dest="order", type=int, help="override the default order")

    bp = sub.add_parser("bijection", parents=[common], help="bijection tables")
    bp.add_argument("which", choices=("phi", "psi"))
    bp.add_argument("--n", type=int, required=True)
    bp.add_argument("--ell", type=int, help="size of the partitions mapped by psi")
    return p


def _run(args) -> tuple[int, str, dict, list, list, dict]:
    """Returns (exit code, command, params, columns, rows, metadata)."""
    if args.command == "spt":
        if args.n_max < 1:
            raise UsageError("--n-max must be at least 1")
        cols, rows = spt_rows(args.variant, args.n_max)
        return EXIT_OK, "spt", {"variant": args.variant, "n_max": args.n_max}, cols, rows, {}

    if args.command == "table":
        if args.n_max < 0:
            raise UsageError("--n-max must be nonnegative")
        cols, rows = table_rows(args.family, args.n_max, args.t)
        params = {"family": canonical_family(args.family), "n_max": args.n_max, "t": args.t}
        return EXIT_OK, "table", params, cols, rows, {}

    if args.command == "verify":
        if args.list:
            rows = [[cid, c.default_order, c.description] for cid, c in sorted(CATALOG.items())]
            return EXIT_OK, "verify", {"list": True}, ["check_id", "default_order", "description"], rows, {}
        ids = sorted(CATALOG) if args.all else list(dict.fromkeys(args.ids))
        if not ids:
            raise UsageError("give check ids or --all")
        unknown = [c for c in ids if c not in CATALOG]
        if unknown:
            raise UsageError(f"unknown check ids: {', '.join(unknown)}")
        if args.order is not None and args.order < 1:
            raise UsageError("--order must be at least 1")
        reports = [run_check(cid, args.order) for cid in sorted(ids)]
        cols = ["check_id", "order_checked", "status", "witness_n", "witness_m",
                "witness_expected", "witness_got", "description"]
        rows = [[r.check_id, r.order_checked, r.status, *_witness_cells(r), r.description] for r in reports]
        meta = {"check_elapsed": {r.check_id: round(r.elapsed, 6) for r in reports}}
        code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
        return code, "verify", {"ids": sorted(ids), "order": args.order}, cols, rows, meta

    if args.command == "bijection":
        if args.n < 1:
            raise UsageError("--n must be at least 1")
        if args.which == "phi":
            cols, rows = phi_rows(args.n)
            return EXIT_OK, "bijection", {"which": "phi", "n": args.n}, cols, rows, {}
        if args.ell is None or args.ell < 1:
            raise UsageError("psi needs --ell >= 1")
        cols, rows = psi_rows(args.n, args.ell)
        return EXIT_OK, "bijection", {"which": "psi", "n": args.n, "ell": args.ell}, cols, rows, {}

    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        code, command, params, cols, rows, meta = _run(args)
    except UsageError as exc:
        print(f"overspt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    meta = {"elapsed": round(time.perf_counter() - start, 6), **meta}
    text = encode(args.format, command, params, cols, rows, meta)
    if args.format != "json":
        print(f"overspt: elapsed {meta['elapsed']:.3f}s", file=sys.stderr)
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"overspt: error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if command == "verify" and code == EXIT_FAIL:
        failed = [r[0] for r in rows if r[2] == "fail"]
        print(f"overspt: failing checks: {', '.join(failed)}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
