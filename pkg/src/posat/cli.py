"""Command-line interface: ``posat <verb> <subcommand> [flags]``.

Exit status is 0 on success, 1 on a domain error (reported as JSON on
stderr) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .constructions import audit_all, construct_saturated_multipartite
from .embedding import find_induced_copy, oracle_find_copy
from .errors import FamilyFormatError, PosatError, PreconditionError
from .exact import DEFAULT_BUDGET, sat_star_exact, verify_theorem_bound
from .family import SubsetFamily, deserialize, from_csv, to_csv
from .poset import EMPTY, Poset, has_uctp, parse_expr, parse_poset_expr, poset_from_json
from .saturation import check_gluing_property, check_saturated, greedy_saturate
from .structure import compute_decomposition, lemma_table_csv, verify_prelim_lemmas


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def load_poset(text: str) -> Poset:
    """An expression, the word ``empty``, or a path to a poset JSON file."""
    if text.strip().lower() == "empty":
        return EMPTY
    if text.endswith(".json"):
        return poset_from_json(_read(text))
    return parse_poset_expr(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FamilyFormatError(f"cannot read {path}: {exc.strerror}") from None


def load_family(path: str) -> SubsetFamily:
    text = _read(path)
    if path.endswith(".csv"):
        return from_csv(text)
    return deserialize(text)


# ---------------------------------------------------------------------------
# output helpers


def _flat_csv(data: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key, value in data.items():
        if isinstance(value, bool) or not isinstance(value, (int, float, str)):
            value = json.dumps(value, separators=(",", ":"))
        writer.writerow([key, value])
    return buf.getvalue()


def _rows_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def _emit(args, data: dict, csv_text: Optional[str] = None, default: str = "json") -> None:
    fmt = args.format or default
    if fmt == "json":
        out = json.dumps(data, separators=(",", ":"), sort_keys=False) + "\n"
    elif fmt == "pretty":
        out = json.dumps(data, indent=2) + "\n"
    else:
        out = csv_text if csv_text is not None else _flat_csv(data)
    sys.stdout.write(out)


def _jobs(args) -> int:
    if args.jobs < 1:
        raise _UsageError("--jobs must be at least 1")
    return args.jobs


# ---------------------------------------------------------------------------
# commands


def cmd_poset_parse(args) -> None:
    expr = parse_expr(args.expr)
    P = parse_poset_expr(args.expr)
    _emit(args, {"expr": expr.render(), "poset": P.to_json()})


def cmd_poset_show(args) -> None:
    P = load_poset(args.expr)
    data = {"size": P.size, "covers": [list(c) for c in P.cover_pairs()],
            "strict_pairs": P.strict_pairs}
    if P.size:
        data.update({
            "height": P.height(),
            "width": P.width(),
            "minimal": P.minimal_elements(),
            "maximal": P.maximal_elements(),
            "unique_minimal": len(P.minimal_elements()) == 1,
            "unique_maximal": len(P.maximal_elements()) == 1,
            "uctp": has_uctp(P),
        })
    _emit(args, data)


def cmd_sat_check(args) -> None:
    F = load_family(args.family)
    report = check_saturated(F, load_poset(args.poset), jobs=_jobs(args))
    _emit(args, report.to_json())


def cmd_sat_greedy(args) -> None:
    if args.family:
        F0 = load_family(args.family)
    elif args.n is not None:
        F0 = SubsetFamily(args.n, ())
    else:
        raise _UsageError("sat greedy needs -f FAMILY or -n N")
    F = greedy_saturate(F0, load_poset(args.poset))
    _emit(args, F.to_json(), to_csv(F))


def cmd_sat_exact(args) -> None:
    result = sat_star_exact(args.n, load_poset(args.poset), budget=args.budget,
                            method=args.method or "auto")
    _emit(args, result.to_json())


def _layers(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise _UsageError(f"bad --layers value {text!r}") from None


def cmd_construct_multipartite(args) -> None:
    c = construct_saturated_multipartite(args.n, _layers(args.layers), verify=not args.no_verify)
    data = c.to_json()
    if args.audit:
        audits = audit_all(c)
        data["audit"] = [a.to_json() for a in audits]
        data["audit_passed"] = all(a.passed for a in audits)
    ledger = _rows_csv([c.ledger_row()])
    if args.ledger:
        Path(args.ledger).write_text(ledger)
    _emit(args, data, ledger)


def _triple(args) -> tuple[Poset, int, Poset]:
    if args.k < 2:
        raise PreconditionError("middle antichain needs k >= 2")
    return load_poset(args.p1), args.k, load_poset(args.p2)


def cmd_analyze_structure(args) -> None:
    F = load_family(args.family)
    P1, k, P2 = _triple(args)
    _emit(args, compute_decomposition(F, P1, k, P2).to_json())


def cmd_verify_lemmas(args) -> None:
    F = load_family(args.family)
    P1, k, P2 = _triple(args)
    report = verify_prelim_lemmas(F, P1, k, P2)
    _emit(args, report.to_json(), lemma_table_csv(report), default="csv")


def cmd_verify_gluing(args) -> None:
    F = load_family(args.family)
    Q1, Q2 = load_poset(args.q1), load_poset(args.q2)
    _emit(args, {"holds": check_gluing_property(F, Q1, Q2, F.n)})


def cmd_verify_bound(args) -> None:
    P1, k, P2 = _triple(args)
    report = verify_theorem_bound(args.n, P1, k, P2, budget=args.budget,
                                  method=args.method or "auto")
    _emit(args, report.to_json())


def cmd_bench_embed(args) -> None:
    P = load_poset(args.poset)
    rng = random.Random(args.seed)
    fams = [SubsetFamily.of(args.n, rng.sample(range(1 << args.n), min(args.size, 1 << args.n)))
            for _ in range(args.count)]
    start = time.perf_counter()
    found = sum(find_induced_copy(F, P) is not None for F in fams)
    elapsed = time.perf_counter() - start
    data = {"n": args.n, "families": args.count, "family_size": args.size,
            "found": found, "seconds": round(elapsed, 6)}
    if args.oracle:
        data["oracle_agrees"] = all(
            (find_induced_copy(F, P) is None) == (oracle_find_copy(F, P) is None) for F in fams)
    _emit(args, data)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default=None)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for saturation scans")

    parser = argparse.ArgumentParser(prog="posat", description=__doc__.splitlines()[0])
    verbs = parser.add_subparsers(dest="verb", required=True)

    def group(name, help_text):
        sub = verbs.add_parser(name, help=help_text)
        return sub.add_subparsers(dest="sub", required=True)

    def leaf(grp, name, func, help_text):
        p = grp.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def triple(p):
        p.add_argument("-p1", "--p1", required=True, help="top poset (expression or 'empty')")
        p.add_argument("-k", type=int, required=True, help="middle antichain size")
        p.add_argument("-p2", "--p2", required=True, help="bottom poset (expression or 'empty')")

    g = group("poset", "parse and inspect posets")
    leaf(g, "parse", cmd_poset_parse, "parse an expression").add_argument("expr")
    leaf(g, "show", cmd_poset_show, "poset properties").add_argument("expr")

    g = group("sat", "freeness and saturation")
    p = leaf(g, "check", cmd_sat_check, "check a family for saturation")
    p.add_argument("-f", "--family", required=True)
    p.add_argument("-p", "--poset", required=True)
    p = leaf(g, "greedy", cmd_sat_greedy, "greedy completion in ascending order")
    p.add_argument("-f", "--family")
    p.add_argument("-n", type=int)
    p.add_argument("-p", "--poset", required=True)
    p = leaf(g, "exact", cmd_sat_exact, "exact saturation number")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p", "--poset", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--method", choices=("exhaustive", "bnb"))

    g = group("construct", "upper-bound constructions")
    p = leaf(g, "multipartite", cmd_construct_multipartite, "complete multipartite construction")
    p.add_argument("--layers", required=True, help="layer sizes bottom first, e.g. 2,2")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--audit", action="store_true", help="audit every trace class")
    p.add_argument("--ledger", help="write the size ledger CSV here")
    p.add_argument("--no-verify", action="store_true", help="skip the saturation re-check")

    g = group("analyze", "structural analysis")
    p = leaf(g, "structure", cmd_analyze_structure, "structural decomposition")
    p.add_argument("-f", "--family", required=True)
    triple(p)

    g = group("verify", "empirical checks of structural statements")
    p = leaf(g, "lemmas", cmd_verify_lemmas, "lemma battery on one family")
    p.add_argument("-f", "--family", required=True)
    triple(p)
    p = leaf(g, "gluing", cmd_verify_gluing, "gluing a point between two parts")
    p.add_argument("-f", "--family", required=True)
    p.add_argument("-q1", "--q1", required=True)
    p.add_argument("-q2", "--q2", required=True)
    p = leaf(g, "bound", cmd_verify_bound, "exact value against the linear lower bounds")
    p.add_argument("-n", type=int, required=True)
    triple(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--method", choices=("exhaustive", "bnb"))

    g = group("bench", "timing")
    p = leaf(g, "embed", cmd_bench_embed, "time copy search on random families")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p", "--poset", required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--size", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="cross-check against the oracle")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"posat: error: {exc}", file=sys.stderr)
        return 2
    except PosatError as exc:
        print(json.dumps(exc.to_json(), separators=(",", ":")), file=sys.stderr)
        return 1
    return 0


run = main
