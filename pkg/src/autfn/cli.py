"""Command-line front end: ``autfn <command> ...``.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
usage or input errors (bad flags, malformed files, exceeded caps).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import __version__
from .algebraverify import CheckReport, CheckResult, build_t, generate, is_elementary_abelian, run_relation_suite
from .aut import NotInvertible, parse_endo
from .graph import GraphError, graph_induced, load_graph, t_graph, t_rotation
from .homology import betti
from .linear import (
    CapExceeded,
    abelianize,
    conjugacy_classes,
    default_cap,
    elementary_abelian_rank,
    enumerate_group,
    is_simple,
    mod_p,
    normal_closure,
    parse_matrix,
    special_linear,
)
from .simplicial import ActionGroup, NonRegularAction, NotSimplicial, load_actions, load_complex
from . import smith
from .smith import PreconditionError, SpaceKind


class InputError(Exception):
    """Raised for anything that should end in exit status 2."""


INPUT_ERRORS = (
    InputError,
    ValueError,
    KeyError,
    OSError,
    CapExceeded,
    NonRegularAction,
    NotSimplicial,
    PreconditionError,
    GraphError,
    NotInvertible,
)


# -- reports ------------------------------------------------------------------------------


def report_document(argv: Sequence[str], results: Sequence[CheckResult]) -> dict:
    rows = []
    for r in sorted(results, key=lambda r: r.id):
        row = {"id": r.id, "paper_ref": r.paper_ref, "quote": r.quote, "status": r.status}
        if r.witness is not None:
            row["witness"] = r.witness
        row["millis"] = r.millis
        rows.append(row)
    summary = {s: sum(r["status"] == k for r in rows) for s, k in
               (("passed", "pass"), ("failed", "fail"), ("skipped", "skip"))}
    return {"tool": "autfn", "version": __version__, "command": list(argv), "results": rows, "summary": summary}


def strip_timing(doc: dict) -> dict:
    """Copy of a report without ``millis`` fields, for comparisons and hashing."""
    out = dict(doc)
    out["results"] = [{k: v for k, v in r.items() if k != "millis"} for r in doc["results"]]
    return out


def format_text(doc: dict) -> str:
    lines = [f"autfn {doc['version']}: {' '.join(doc['command'])}"]
    for r in doc["results"]:
        lines.append(f"{r['status'].upper():4}  {r['id']}  [{r['paper_ref']}]  {r['quote']}")
        if r.get("witness"):
            lines.append(f"      witness: {r['witness']}")
    s = doc["summary"]
    lines.append(f"passed={s['passed']} failed={s['failed']} skipped={s['skipped']}")
    return "\n".join(lines)


def emit_report(doc: dict, fmt: str) -> int:
    print(format_text(doc) if fmt == "text" else json.dumps(doc, indent=2, sort_keys=True))
    return 1 if doc["summary"]["failed"] else 0


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, round((time.perf_counter() - t0) * 1000, 3)


# -- commands -----------------------------------------------------------------------------


def cmd_relations(args, argv) -> int:
    try:
        rep: CheckReport = run_relation_suite(args.n, args.m, args.check, args.jobs)
    except KeyError as e:
        raise InputError(e.args[0]) from None
    return emit_report(report_document(argv, rep.results), args.format)


def _rank_or_none(r):
    return r if isinstance(r, int) else None


def cmd_subgroup(args, argv) -> int:
    gens = [parse_endo(w, args.n) for w in args.words]
    G = generate(gens, args.cap)
    doc = {
        "n": args.n,
        "generators": args.words,
        "order": G.order,
        "elementary_abelian_rank": {str(p): _rank_or_none(is_elementary_abelian(G, p)) for p in (2, 3)},
    }
    if args.list:
        doc["elements"] = [e.format() for e in G.elements]
    print(json.dumps(doc, indent=2))
    return 0


def _is_matrix_text(text: str) -> bool:
    return all(c.isdigit() or c in " ;-" for c in text)


def _matrix_gens(args):
    if args.named:
        if args.n is None:
            raise InputError("--named needs --n")
        return special_linear(args.n, args.p, args.cap)
    if not args.gen:
        raise InputError("give --gen or --named")
    mats = []
    for text in args.gen:
        if _is_matrix_text(text):
            mats.append(parse_matrix(text, args.p))
        else:
            if args.n is None:
                raise InputError("generator words need --n")
            mats.append(mod_p(abelianize(parse_endo(text, args.n)), args.p))
    return enumerate_group(mats, args.cap)


def cmd_matrix_group(args, argv) -> int:
    G, ms = _timed(_matrix_gens, args)
    label = args.named or "gens"
    results = [CheckResult(f"matrix_group.{label}.order", "finite matrix group", r"|G|", "pass",
                           f"n={G.n} p={G.p} order={G.order} "
                           f"elementary_abelian_rank={_rank_or_none(elementary_abelian_rank(G, G.p))}", ms)]
    if args.simple:
        simple, ms = _timed(is_simple, G)
        results.append(CheckResult(
            f"matrix_group.{label}.simple", "simplicity by normal closures of class representatives",
            r"\langle\langle g\rangle\rangle = G \ \forall g\ne 1", "pass" if simple else "fail",
            f"classes={len(conjugacy_classes(G))}", ms))
    if args.normal_closure:
        seed = [parse_matrix(t, G.p) for t in args.normal_closure]
        H, ms = _timed(normal_closure, seed, G)
        rank = elementary_abelian_rank(H, G.p)
        results.append(CheckResult(
            f"matrix_group.{label}.normal_closure", "normal closure of a seed", r"\langle\langle S\rangle\rangle",
            "pass", f"order={H.order} elementary_abelian_rank={_rank_or_none(rank)}", ms))
    return emit_report(report_document(argv, results), args.format)


def _load_space(args):
    if args.builtin:
        from .catalog import catalog_spaces

        spaces = catalog_spaces()
        if args.builtin not in spaces:
            raise InputError(f"unknown builtin complex {args.builtin!r}; choose from {sorted(spaces)}")
        return spaces[args.builtin]
    if not args.input:
        raise InputError("give --input or --builtin")
    return load_complex(args.input)


def cmd_homology(args, argv) -> int:
    K = _load_space(args)
    print(json.dumps(betti(K, args.p).to_json()))
    return 0


def _smith_row(v: smith.SmithVerdict, key: str, ms: float) -> CheckResult:
    ref, quote = smith.ANCHORS[v.claim]
    witness = json.dumps({"inputs": v.inputs, "expected": v.expected, "observed": v.observed}, sort_keys=True)
    return CheckResult(f"smith.{v.claim}.{key}", ref, quote, "pass" if v.passed else "fail", witness, ms)


def cmd_smith(args, argv) -> int:
    K = _load_space(args)
    if not args.action:
        raise InputError("--action is required")
    maps = load_actions(args.action, K)
    if not maps:
        raise InputError("action file lists no maps")
    results = []
    if args.check == "fixed":
        for k, g in enumerate(maps):
            v, ms = _timed(smith.smith_fixed_check, K, g, args.p)
            results.append(_smith_row(v, g.name or str(k), ms))
    elif args.check == "borel":
        if len(maps) != 2:
            raise InputError("borel needs exactly two maps")
        v, ms = _timed(smith.borel_check, K, maps[0], maps[1], args.p)
        results.append(_smith_row(v, "A", ms))
    else:
        G = ActionGroup.generate(K, maps)
        if args.check == "pairs":
            v, ms = _timed(smith.involution_pair_scan, K, G)
        else:
            v, ms = _timed(smith.no_free_rank2_check, K, G, args.p)
        results.append(_smith_row(v, "G", ms))
    return emit_report(report_document(argv, results), args.format)


def cmd_oracle(args, argv) -> int:
    kind = SpaceKind(args.space, args.dim, args.p)
    print(json.dumps(smith.rigidity_oracle(args.group, args.n, kind).to_dict()))
    return 0


def cmd_effective(args, argv) -> int:
    v = smith.effective_bound(args.p, args.d, SpaceKind(args.space, args.dim, args.p))
    print(json.dumps({"verdict": v.verdict, "clause": v.clause}))
    return 0


def _builtin_graph(name: str):
    if not (name.startswith("T") and name[1:].isdigit() and int(name[1:]) >= 1):
        raise InputError(f"unknown builtin graph {name!r}; use T<m>")
    m = int(name[1:])
    syms = {f"rot{i}": t_rotation(m, i) for i in range(1, m + 1)}
    return t_graph(m), syms


def cmd_graph_aut(args, argv) -> int:
    if args.builtin:
        g, syms = _builtin_graph(args.builtin)
    elif args.graph:
        g, syms = load_graph(args.graph)
    else:
        raise InputError("give --graph or --builtin")
    names = args.symmetry or sorted(syms)
    results = []
    T = build_t(g.rank // 2) if g.rank % 2 == 0 and g.rank else None
    for name in names:
        if name not in syms:
            raise InputError(f"no symmetry named {name!r}")
        f, ms = _timed(graph_induced, g, syms[name])
        print(f"{name}: {f.format(paired=True)}", file=sys.stderr if args.format == "json" else sys.stdout)
        if T is None:
            results.append(CheckResult(f"graph_aut.{name}.in_T", "graph symmetry realises T", r"\psi(s)\in T",
                                       "skip", "rank is odd", ms))
            continue
        member = f in T
        results.append(CheckResult(
            f"graph_aut.{name}.in_T", "graph symmetry realises T", r"\psi(s)\in T=\langle R_1,\dots,R_m\rangle",
            "pass" if member else "fail", f.format(paired=True), ms))
    return emit_report(report_document(argv, results), args.format)


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="autfn", description="Exact checks for Aut(F_n), its finite quotients "
                                 "and fixed points of finite group actions.")
    ap.add_argument("--version", action="version", version=f"autfn {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="json")

    p = sub.add_parser("relations", help="run the relation suite")
    p.add_argument("--n", type=int, default=5, help="largest rank (default 5)")
    p.add_argument("--m", type=int, default=3, help="largest number of R_i factors (default 3)")
    p.add_argument("--check", action="append", help="id glob; repeatable")
    p.add_argument("--jobs", type=int, default=1)
    fmt(p)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("subgroup", help="enumerate a finite subgroup of Aut(F_n)")
    p.add_argument("words", nargs="+", help="generator words such as L12 or 'PERM(1 2)'")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--list", action="store_true", help="print every element")
    p.set_defaults(func=cmd_subgroup)

    p = sub.add_parser("matrix-group", help="enumerate a matrix group over Z_p")
    p.add_argument("--gen", action="append", help="matrix '1 1; 0 1' or generator word; repeatable")
    p.add_argument("--named", choices=("sl",), help="named group, needs --n")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--simple", action="store_true")
    p.add_argument("--normal-closure", action="append", metavar="SEED", help="seed matrix; repeatable")
    fmt(p)
    p.set_defaults(func=cmd_matrix_group)

    def space(p):
        p.add_argument("--input", help="complex JSON file")
        p.add_argument("--builtin", help="catalog complex name")

    p = sub.add_parser("homology", help="betti numbers mod p")
    space(p)
    p.add_argument("--p", type=int, default=2)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("smith", help="fixed-point checks on a simplicial action")
    space(p)
    p.add_argument("--action", help="action JSON file")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--check", choices=("fixed", "borel", "pairs", "free"), default="fixed")
    fmt(p)
    p.set_defaults(func=cmd_smith)

    def kind(p):
        p.add_argument("--space", choices=("sphere", "acyclic"), required=True)
        p.add_argument("--dim", type=int, required=True, help="sphere or manifold dimension")
        p.add_argument("--p", type=int, default=2)

    p = sub.add_parser("oracle", help="does a rigidity theorem force the action to be trivial")
    p.add_argument("--group", choices=smith.GROUPS, required=True)
    p.add_argument("--n", type=int, required=True)
    kind(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("effective", help="can (Z_p)^d act effectively")
    p.add_argument("--d", type=int, required=True, help="rank of the elementary abelian group")
    kind(p)
    p.set_defaults(func=cmd_effective)

    p = sub.add_parser("graph-aut", help="automorphism induced by a graph symmetry")
    p.add_argument("--graph", help="graph JSON file")
    p.add_argument("--builtin", help="T<m>, the graph realising (Z_3)^m")
    p.add_argument("--symmetry", action="append", help="symmetry name (default: all)")
    fmt(p)
    p.set_defaults(func=cmd_graph_aut)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if getattr(args, "cap", 0) is None:
        args.cap = default_cap()
    try:
        return args.func(args, argv)
    except json.JSONDecodeError as e:
        print(f"autfn: malformed JSON: {e}", file=sys.stderr)
    except INPUT_ERRORS as e:
        msg = e.args[0] if e.args else type(e).__name__
        print(f"autfn: {type(e).__name__}: {msg}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
