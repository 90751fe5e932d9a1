"""Command line entry point: ingredients, solve, formula, verify."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from itertools import product

from . import formulas
from .mtwo import RankChart, free_rank_at
from .schubert import CONJ, FIELDS, REAL, CellTable, canonical_kn1_signs, cell_weight, cell_weight_matrix, ingredient_table, parse_signs
from .solver import AMBIGUOUS, CERTIFIED, DEFAULT_CAP, INCONCLUSIVE, INCONSISTENT, PAIRWISE, SEQUENTIAL, SolveOptions, solve
from .young import (
    betti,
    check_box,
    complement_identity_counts,
    duality_partner,
    enumerate_partitions,
    size,
    trace,
    transpose,
)

SCHEMA = "1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CODES = {CERTIFIED: 0, AMBIGUOUS: 2, INCONCLUSIVE: 3, INCONSISTENT: 4}
EXIT_MISMATCH = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- documents


def chart_document(chart: RankChart, params: dict, status: str = CERTIFIED, diagnostics=None) -> dict:
    doc = {
        "schema": SCHEMA,
        "parameters": params,
        "generators": [[g.p, g.q] for g in chart.generators],
        "status": status,
    }
    if diagnostics is not None:
        doc["diagnostics"] = diagnostics
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> dict:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    if "generators" in doc:
        doc["generators"] = sorted([int(p), int(q)] for p, q in doc["generators"])
    return doc


def chart_from_document(doc: dict) -> RankChart:
    return RankChart(tuple(g) for g in doc["generators"])


def chart_csv(chart: RankChart) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "q", "free_rank"])
    for (p, q), c in chart.nonzero().items():
        w.writerow([p, q, c])
    return buf.getvalue()


def chart_grid(chart: RankChart) -> str:
    """Multiplicity grid with the highest weight on top, dimensions as columns."""
    if not chart.generators:
        return "(empty chart)\n"
    counts = chart.counts()
    ps = [g.p for g in chart.generators]
    qs = [g.q for g in chart.generators]
    pmin, pmax = min(0, min(ps)), max(ps)
    qmin, qmax = min(0, min(qs)), max(qs)
    width = max(len(str(pmax)), len(str(pmin)), max(len(str(c)) for c in counts.values()))
    lab = max(len(str(qmax)), len(str(qmin)), 1)
    lines = []
    for q in range(qmax, qmin - 1, -1):
        cells = [str(counts.get((p, q), ".")).rjust(width) for p in range(pmin, pmax + 1)]
        lines.append(f"{str(q).rjust(lab)} | " + " ".join(cells))
    lines.append(" " * lab + " +-" + "-" * ((width + 1) * (pmax - pmin + 1) - 1))
    lines.append(" " * lab + "   " + " ".join(str(p).rjust(width) for p in range(pmin, pmax + 1)))
    return "\n".join(lines) + "\n"


def parse_grid(text: str) -> dict[tuple[int, int], int]:
    """Read a multiplicity grid back into a (p, q) -> count mapping."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if lines and lines[0].startswith("(empty"):
        return {}
    ps = [int(x) for x in lines[-1].split()]
    out = {}
    for ln in lines[:-2]:
        left, right = ln.split("|")
        q = int(left)
        for p, tok in zip(ps, right.split()):
            if tok != ".":
                out[(p, q)] = int(tok)
    return out


def label_text(lam) -> str:
    return "(" + ",".join(str(x) for x in lam) + ")"


def table_grid(table: CellTable) -> str:
    """Cell labels placed by (dimension, weight), highest weight on top."""
    cells: dict[tuple[int, int], list[str]] = {}
    for e in table.entries:
        cells.setdefault((e.p, e.q), []).append(label_text(e.label))
    pmax = max(e.p for e in table.entries)
    qmax = max(e.q for e in table.entries)
    text = {key: " ".join(v) for key, v in cells.items()}
    widths = [max([len(str(p))] + [len(t) for (pp, _), t in text.items() if pp == p]) for p in range(pmax + 1)]
    lab = len(str(qmax))
    lines = []
    for q in range(qmax, -1, -1):
        row = [text.get((p, q), ".").ljust(widths[p]) for p in range(pmax + 1)]
        lines.append(f"{str(q).rjust(lab)} | " + "  ".join(row).rstrip())
    lines.append(" " * lab + " +-" + "-" * (sum(widths) + 2 * pmax))
    lines.append(" " * lab + "   " + "  ".join(str(p).ljust(widths[p]) for p in range(pmax + 1)).rstrip())
    return "\n".join(lines) + "\n"


def table_document(table: CellTable) -> dict:
    return {
        "schema": SCHEMA,
        "k": table.k,
        "n": table.n,
        "signs": table.signs,
        "field": table.field,
        "cells": [{"label": list(e.label), "p": e.p, "q": e.q} for e in table.entries],
    }


def table_csv(table: CellTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "p", "q"])
    for e in table.entries:
        w.writerow([" ".join(str(x) for x in e.label), e.p, e.q])
    return buf.getvalue()


def emit_chart(chart: RankChart, fmt: str, params: dict, status=CERTIFIED, diagnostics=None) -> str:
    if fmt == "json":
        return dumps(chart_document(chart, params, status, diagnostics))
    if fmt == "csv":
        return chart_csv(chart)
    return chart_grid(chart)


# ---------------------------------------------------------------- commands


def cmd_ingredients(args) -> int:
    signs = parse_signs(args.signs) if args.field != CONJ or args.signs else None
    if signs is None:
        if args.n is None:
            raise UsageError("complex conjugation tables need -n or a sign string")
        signs = "+" * args.n
    if not 0 <= args.k <= len(signs):
        raise UsageError(f"k={args.k} does not fit n={len(signs)}")
    table = ingredient_table(args.k, signs, args.field)
    if args.format == "json":
        out = dumps(table_document(table))
    elif args.format == "csv":
        out = table_csv(table)
    else:
        out = table_grid(table)
    sys.stdout.write(out)
    return EXIT_OK


def cmd_solve(args) -> int:
    if not 0 <= args.k <= args.n or not 0 <= args.q <= args.n:
        raise UsageError("need 0 <= k <= n and 0 <= q <= n")
    opts = SolveOptions(
        max_candidates=args.max_candidates,
        prefix_pruning=args.prefix_pruning,
        model=args.model,
    )
    report = solve(args.k, args.n, args.q, args.field, opts)
    params = {"k": args.k, "n": args.n, "q": args.q, "field": args.field, "source": "solver"}
    diagnostics = {
        "certifier": report.certifier,
        "constructions": [w.as_dict() for w in report.witnesses],
        "note": report.note,
    }
    if report.certified:
        sys.stdout.write(emit_chart(report.result, args.format, params, report.status, diagnostics))
    else:
        if args.format == "json":
            doc = {
                "schema": SCHEMA,
                "parameters": params,
                "status": report.status,
                "candidates": [[[g.p, g.q] for g in c.generators] for c in report.candidates],
                "diagnostics": diagnostics,
            }
            sys.stdout.write(dumps(doc))
        else:
            sys.stdout.write(f"status: {report.status}\n")
            if report.note:
                sys.stdout.write(f"note: {report.note}\n")
            for c in report.candidates:
                sys.stdout.write(f"candidate: {c}\n")
        sys.stderr.write(f"solve: {report.status}\n")
    return EXIT_CODES[report.status]


def _need(args, *names):
    missing = [f"-{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"formula {args.family} needs {' '.join(missing)}")


def _base_chart(family: str, args) -> tuple[RankChart, dict]:
    if family == "proj":
        _need(args, "p", "q")
        return formulas.proj_space(args.p, args.q), {"p": args.p, "q": args.q}
    if family == "kn1":
        _need(args, "k", "n")
        return formulas.gr_kn1(args.k, args.n), {"k": args.k, "n": args.n}
    if family == "2n2":
        _need(args, "n")
        return formulas.gr_2n2(args.n), {"n": args.n}
    if family == "conj":
        _need(args, "k", "n")
        return formulas.gr_conj(args.k, args.n), {"k": args.k, "n": args.n}
    raise UsageError(f"no chart for family {family!r}")


def cmd_formula(args) -> int:
    fam = args.family
    if fam in ("inf2n2", "infkn1"):
        if fam == "infkn1":
            _need(args, "k")
        if args.max_p is not None:
            gens = []
            for p in range(args.max_p + 1):
                for q in range(p + 1):
                    r = formulas.inf_gr2_rank(p, q) if fam == "inf2n2" else formulas.inf_kn1_rank(p, q, args.k)
                    gens += [(p, q)] * r
            params = {"family": fam, "max_p": args.max_p, "source": "formula"}
            if fam == "infkn1":
                params["k"] = args.k
            sys.stdout.write(emit_chart(RankChart(gens), args.format, params))
            return EXIT_OK
        _need(args, "p", "q")
        if fam == "inf2n2":
            r = formulas.inf_gr2_rank(args.p, args.q)
        else:
            r = formulas.inf_kn1_rank(args.p, args.q, args.k)
        if args.format == "json":
            params = {"family": fam, "p": args.p, "q": args.q, "source": "formula"}
            if fam == "infkn1":
                params["k"] = args.k
            sys.stdout.write(dumps({"schema": SCHEMA, "parameters": params, "rank": r}))
        elif args.format == "csv":
            sys.stdout.write(f"p,q,free_rank\n{args.p},{args.q},{r}\n")
        else:
            sys.stdout.write(f"{r}\n")
        return EXIT_OK
    if fam == "complex":
        chart, params = _base_chart(args.base, args)
        chart = formulas.complexify(chart)
        params["base"] = args.base
    else:
        chart, params = _base_chart(fam, args)
    params.update({"family": fam, "source": "formula"})
    sys.stdout.write(emit_chart(chart, args.format, params))
    return EXIT_OK


# ---------------------------------------------------------------- verify


def _check_kn1(max_n):
    for n in range(2, max_n + 1):
        for k in range(1, n):
            r = solve(k, n, 1)
            yield f"solve({k},{n},1)", r.certified and r.result == formulas.gr_kn1(k, n)


def _check_gr2(max_n):
    for n in range(3, min(max_n, 8) + 1):
        r = solve(2, n, 2)
        yield f"solve(2,{n},2)", r.certified and r.result == formulas.gr_2n2(n)


def _check_weights(max_n):
    for n in range(1, max_n + 1):
        ok = True
        for signs in ("".join(t) for t in product("+-", repeat=n)):
            for k in range(n + 1):
                for lam in enumerate_partitions(k, n - k):
                    if cell_weight(lam, signs) != cell_weight_matrix(lam, signs):
                        ok = False
        yield f"weight methods n={n}", ok
        for k in range(1, n + 1):
            t = ingredient_table(k, canonical_kn1_signs(k, n))
            yield f"weight=trace k={k} n={n}", all(e.q == trace(e.label) for e in t.entries)


def _check_duality(max_n):
    for n in range(2, max_n + 1):
        for k in range(1, min(4, n - 1) + 1):
            chart = formulas.gr_kn1(k, n)
            sym = all(
                free_rank_at(chart, p, q) == free_rank_at(chart, n * q - p, q)
                for p in range(k * (n - k) + 1)
                for q in range(k + 1)
            )
            inv = True
            for lam in enumerate_partitions(k, n - k):
                mu = duality_partner(lam, k, n)
                check_box(mu, k, n)
                t = trace(lam)
                inv &= duality_partner(mu, k, n) == lam and trace(mu) == t and size(mu) == n * t - size(lam)
            yield f"duality k={k} n={n}", sym and inv


def _check_betti(max_n):
    for n in range(1, max_n + 1):
        for k in range(n + 1):
            for field in (REAL, "C"):
                t = ingredient_table(k, "+" * n, field)
                scale = 1 if field == REAL else 2
                ok = all(
                    sum(1 for e in t.entries if e.p == scale * d) == betti(k, n, d)
                    for d in range(k * (n - k) + 1)
                )
                yield f"betti k={k} n={n} field={field}", ok


def _check_appendix(max_n):
    for n in range(1, max_n + 1):
        for k in range(n + 1):
            ok = True
            for lam in enumerate_partitions(k, n - k):
                tr = transpose(lam, k, n)
                ok &= transpose(tr, n - k, n) == lam and size(tr) == size(lam)
                left, right = complement_identity_counts(lam, n)
                ok &= left == right
            yield f"appendix k={k} n={n}", ok


CHECKS = {
    "kn1": _check_kn1,
    "gr2": _check_gr2,
    "weights": _check_weights,
    "duality": _check_duality,
    "betti": _check_betti,
    "appendix": _check_appendix,
}


def cmd_verify(args) -> int:
    chosen = [name for name in CHECKS if getattr(args, name)] or list(CHECKS)
    max_n = 0 if args.empty_range else args.max_n
    failures = []
    for name in chosen:
        passed = failed = 0
        for instance, ok in CHECKS[name](max_n):
            if ok:
                passed += 1
            else:
                failed += 1
                failures.append(instance)
        sys.stdout.write(f"{name}: {passed} passed, {failed} failed\n")
    for f in failures:
        sys.stdout.write(f"FAILED {f}\n")
    return EXIT_MISMATCH if failures else EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="eqgrass", description="Rank charts of equivariant Grassmannians.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fmt = dict(choices=["text", "json", "csv"], default="text")

    p = sub.add_parser("ingredients", help="cell table for one sign sequence")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-s", "--signs", default="")
    p.add_argument("-n", type=int, help="dimension, for Cconj without a sign string")
    p.add_argument("--field", choices=FIELDS, default=REAL)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_ingredients)

    p = sub.add_parser("solve", help="certify a rank chart from all constructions")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--field", choices=FIELDS, default=REAL)
    p.add_argument("--prefix-pruning", action="store_true")
    p.add_argument("--max-candidates", type=int, default=DEFAULT_CAP)
    p.add_argument("--model", choices=[SEQUENTIAL, PAIRWISE], default=SEQUENTIAL)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("formula", help="closed-form charts and rank queries")
    p.add_argument("family", choices=["proj", "kn1", "2n2", "inf2n2", "infkn1", "conj", "complex"])
    p.add_argument("-k", type=int)
    p.add_argument("-n", type=int)
    p.add_argument("-p", type=int)
    p.add_argument("-q", type=int)
    p.add_argument("--base", choices=["proj", "kn1", "2n2"], default="kn1", help="chart to double for 'complex'")
    p.add_argument("--max-p", type=int, help="render infinite families through this dimension")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("verify", help="cross-check solver, formulas and combinatorics")
    for name in CHECKS:
        p.add_argument(f"--{name}", action="store_true")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--empty-range", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def _attach_signs(argv: list[str]) -> list[str]:
    # "-s -++-+" would otherwise be read as an option
    out = []
    it = iter(range(len(argv)))
    for i in it:
        a = argv[i]
        if a in ("-s", "--signs") and i + 1 < len(argv) and argv[i + 1] and set(argv[i + 1]) <= {"+", "-"}:
            out.append(f"--signs={argv[i + 1]}")
            next(it, None)
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = ap.parse_args(_attach_signs(argv))
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        sys.stderr.write(f"eqgrass: error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
