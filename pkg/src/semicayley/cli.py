"""Command line front end.

One subcommand per library entry point, line-oriented text formats on
stdin/stdout, deterministic output.  Exit status: 0 when the requested
decision or construction completed (including a certified negative), 1
on input errors, 2 when a search gave up on its node or time budget.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import families, invariants, trees, zelinka
from .algebra import TableFormatError
from .embed import embed_monoid, embed_undirected, greedy_cover
from .graphs import Digraph, GraphFormatError, SimpleGraph, parse_graph
from .outcome import (
    BUDGET_EXCEEDED,
    Budget,
    BudgetExceededError,
    DEFAULT_MAX_NODES,
    DEFAULT_MAX_SECONDS,
)
from .recognize import (
    CENSUS_MODES,
    classify_all,
    recognize_monoid_digraph,
    recognize_monoid_graph,
    recognize_semigroup_digraph,
)
from .witness import (
    WitnessRecordError,
    format_witness_record,
    parse_witness_record,
    verify_witness,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2


class _CliError(Exception):
    """Input-level failure; message goes to stderr, exit status 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; the contract reserves 2 for budget
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _CliError(message)


def _read_text(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc.strerror}")


def _input_graph(path, want=None):
    try:
        g = parse_graph(_read_text(path))
    except GraphFormatError as exc:
        raise _CliError(str(exc))
    if want is not None and not isinstance(g, want):
        kind = "undirected" if want is SimpleGraph else "directed"
        raise _CliError(f"this subcommand needs a {kind} graph")
    return g


def _budget(args) -> Budget:
    return Budget(max_nodes=args.max_nodes, max_seconds=args.max_seconds)


def _add_budget_flags(p) -> None:
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES,
                   help="search node budget (default %(default)s)")
    p.add_argument("--max-seconds", type=float, default=DEFAULT_MAX_SECONDS,
                   help="search time budget in seconds (default %(default)s)")


def _emit_witness(w, g) -> None:
    sys.stdout.write(format_witness_record(w, g))


# -- subcommand implementations -------------------------------------------


def _cmd_check_zelinka(args) -> int:
    g = _input_graph(args.graph, Digraph)
    if not g.is_k_outregular(1):
        raise _CliError("check-zelinka needs a 1-outregular digraph")
    p = zelinka.profile(g)
    ok_m, cid_m = zelinka.decide_monoid(p)
    ok_s, cid_s = zelinka.decide_semigroup(p)
    for name, ok, cid in (("monoid", ok_m, cid_m), ("semigroup", ok_s, cid_s)):
        where = f" dominant-component {cid}" if ok else ""
        print(f"{name}: {'yes' if ok else 'no'}{where}")
    return EXIT_OK


def _cmd_construct_zelinka(args) -> int:
    g = _input_graph(args.graph, Digraph)
    if not g.is_k_outregular(1):
        raise _CliError("construct-zelinka needs a 1-outregular digraph")
    p = zelinka.profile(g)
    if args.mode == "monoid":
        ok, _ = zelinka.decide_monoid(p)
        if not ok:
            raise _CliError("not a monoid digraph: no dominant component")
        w = zelinka.construct_monoid(g)
    else:
        ok, _ = zelinka.decide_semigroup(p)
        if not ok:
            raise _CliError("not a semigroup digraph: no dominant component")
        w = zelinka.construct_semigroup(g)
    _emit_witness(w, g)
    return EXIT_OK


def _cmd_embed(args) -> int:
    g = _input_graph(args.graph)
    if isinstance(g, SimpleGraph):
        w = embed_undirected(g, max_maps=args.max_maps)
        _emit_witness(w, g)
        return EXIT_OK
    degs = g.out_degrees()
    if min(degs) == 0:
        raise _CliError("embed needs a sink-free digraph")
    fam = greedy_cover(g, max(degs))
    w = embed_monoid(g, fam, max_maps=args.max_maps)
    _emit_witness(w, g)
    return EXIT_OK


def _cmd_recognize(args) -> int:
    budget = _budget(args)
    if args.mode == "monoid-graph":
        g = _input_graph(args.graph, SimpleGraph)
        out = recognize_monoid_graph(
            g,
            budget,
            require_generated=args.require_generated,
            max_connection=args.max_connection,
            column_prunes=not args.no_column_prunes,
        )
    else:
        g = _input_graph(args.graph, Digraph)
        if args.require_generated or args.max_connection is not None:
            raise _CliError(
                "--require-generated/--max-connection apply to monoid-graph only")
        rec = (recognize_monoid_digraph if args.mode == "monoid-digraph"
               else recognize_semigroup_digraph)
        out = rec(g, budget, column_prunes=not args.no_column_prunes)
    print(f"status: {out.status}")
    print(f"nodes: {out.nodes}")
    if out.is_witness:
        _emit_witness(out.witness, g)
    return EXIT_BUDGET if out.is_budget else EXIT_OK


def _cmd_invariants(args) -> int:
    g = _input_graph(args.graph, SimpleGraph)
    print(f"order\t{g.order}")
    print(f"edges\t{len(g.edges)}")
    print(f"arboricity\t{invariants.arboricity(g)}")
    print(f"pseudoarboricity\t{invariants.pseudoarboricity(g)}")
    print(f"independence-number\t{invariants.independence_number(g)}")
    degs = g.degrees()
    if g.order > 0 and min(degs) == max(degs) and g.order > 1:
        p = invariants.spectrum(g)
        print(f"degree\t{p.degree}")
        print(f"lambda\t{p.lam:.6f}")
        print(f"connectivity-bound\t{invariants.connectivity_bound(p)}")
    if args.beta is not None:
        print(f"beta[{args.beta}]\t{invariants.beta(g, args.beta)}")
    return EXIT_OK


def _cmd_gen(args) -> int:
    from .graphs import format_graph

    name = args.family
    if name == "gkl":
        g = families.gen_Gkl(args.params[0], args.params[1])
    elif name == "gklk":
        g = families.gen_Gklk(args.params[0], args.params[1], args.params[2])
    elif name == "k4cl":
        g = families.gen_K4_Cl(args.params[0])
    elif name == "perfect-kary":
        g, _root = families.gen_perfect_kary(args.params[0], args.params[1])
    elif name == "tplus":
        g, _root = families.gen_Tplus(args.params[0], args.params[1])
    elif name == "looped-path":
        g = families.looped_path_digraph()
    elif name == "smallest-tree":
        g = families.gen_smallest_tree()
    elif name == "threshold":
        seq = args.seq if args.seq is not None else ""
        g, w = families.gen_threshold(seq)
        sys.stdout.write(format_graph(g))
        _emit_witness(w, g)
        return EXIT_OK
    else:  # unreachable; argparse restricts choices
        raise _CliError(f"unknown family {name}")
    sys.stdout.write(format_graph(g))
    return EXIT_OK


def _cmd_tree_classify(args) -> int:
    g = _input_graph(args.graph, SimpleGraph)
    try:
        verdict = trees.classify_tree(
            g, escalate=args.escalate, budget=_budget(args))
    except ValueError as exc:
        raise _CliError(str(exc))
    print(f"verdict: {verdict.status}")
    print("candidates: " + " ".join(str(e) for e in verdict.candidates))
    for e in verdict.candidates:
        detail = verdict.details.get(e)
        if detail is None:
            continue  # classifier stopped before examining this candidate
        print(f"candidate {e}: " + " ".join(str(x) for x in detail))
    if verdict.witness is not None:
        _emit_witness(verdict.witness, g)
    return EXIT_OK


def _cmd_census(args) -> int:
    report = classify_all(
        args.order,
        args.mode,
        max_nodes=args.max_nodes,
        max_seconds=args.max_seconds,
        workers=args.workers,
    )
    for line in report.lines():
        print(line)
    counts = report.counts()
    summary = " ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    print(f"# total={len(report.entries)} {summary}", file=sys.stderr)
    return EXIT_BUDGET if counts.get(BUDGET_EXCEEDED) else EXIT_OK


def _cmd_verify_witness(args) -> int:
    try:
        w, g, _recorded = parse_witness_record(_read_text(args.record))
    except (WitnessRecordError, GraphFormatError, TableFormatError) as exc:
        raise _CliError(str(exc))
    checks = verify_witness(w, g)
    ok = True
    for name, val in checks.items():
        print(f"check {name}: {'true' if val else 'false'}")
        ok = ok and val
    return EXIT_OK if ok else EXIT_INPUT


# -- parser wiring ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="semicayley",
                description="Decide and certify Cayley graph representability "
                            "of finite graphs and digraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("check-zelinka",
                       help="decide 1-outregular digraphs by component shape")
    q.add_argument("graph", nargs="?", help="graph file (default stdin)")
    q.set_defaults(func=_cmd_check_zelinka)

    q = sub.add_parser("construct-zelinka",
                       help="build a witness for a 1-outregular digraph")
    q.add_argument("--mode", choices=("monoid", "semigroup"), default="monoid")
    q.add_argument("graph", nargs="?")
    q.set_defaults(func=_cmd_construct_zelinka)

    q = sub.add_parser("embed",
                       help="represent a graph inside a larger transition monoid")
    q.add_argument("--max-maps", type=int, default=10**6,
                   help="closure size cap (default %(default)s)")
    q.add_argument("graph", nargs="?")
    q.set_defaults(func=_cmd_embed)

    q = sub.add_parser("recognize", help="exhaustive Cayley table search")
    q.add_argument("--mode", required=True,
                   choices=("monoid-digraph", "semigroup-digraph", "monoid-graph"))
    q.add_argument("--require-generated", action="store_true",
                   help="demand that the connection set generates the monoid")
    q.add_argument("--max-connection", type=int, default=None,
                   help="restrict identity candidates to this degree")
    q.add_argument("--no-column-prunes", action="store_true",
                   help="disable the component-shape column prunes")
    _add_budget_flags(q)
    q.add_argument("graph", nargs="?")
    q.set_defaults(func=_cmd_recognize)

    q = sub.add_parser("invariants",
                       help="density, independence and spectral invariants")
    q.add_argument("--beta", type=int, default=None,
                   help="also maximize independence over k incidence-map "
                        "edge removals")
    q.add_argument("graph", nargs="?")
    q.set_defaults(func=_cmd_invariants)

    q = sub.add_parser("gen", help="named graph families")
    q.add_argument("family",
                   choices=("gkl", "gklk", "threshold", "k4cl",
                            "perfect-kary", "tplus", "looped-path", "smallest-tree"))
    q.add_argument("params", type=int, nargs="*",
                   help="integer parameters, per family")
    q.add_argument("--seq", default=None,
                   help="threshold creation sequence over {i,d}")
    q.set_defaults(func=_cmd_gen)

    q = sub.add_parser("tree-classify",
                       help="three-valued generated-monoid-tree classifier")
    q.add_argument("--escalate", action="store_true",
                   help="fall through to exhaustive search when undecided")
    _add_budget_flags(q)
    q.add_argument("graph", nargs="?")
    q.set_defaults(func=_cmd_tree_classify)

    q = sub.add_parser("census",
                       help="classify all graphs of one order up to isomorphism")
    q.add_argument("order", type=int)
    q.add_argument("--mode", required=True, choices=CENSUS_MODES)
    q.add_argument("--workers", type=int, default=None)
    q.add_argument("--max-nodes", type=int, default=10_000_000)
    q.add_argument("--max-seconds", type=float, default=60.0)
    q.set_defaults(func=_cmd_census)

    q = sub.add_parser("verify-witness",
                       help="recompute every check of a witness record")
    q.add_argument("record", nargs="?", help="record file (default stdin)")
    q.set_defaults(func=_cmd_verify_witness)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
