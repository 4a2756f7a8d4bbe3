"""Command-line driver.

Graph arguments are file paths, ``-`` for stdin, ``corpus:NAME`` for a
built-in graph, or ``random:N`` for a seeded random negative definite graph
with at most ``N`` vertices (seed from ``--seed``).

Exit codes: 0 success, 1 negative mathematical verdict (report still
printed), 2 input or usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Callable

from . import corpus
from .calculus import (
    ORDER_SEARCH_LIMIT,
    SMOOTH_POINT,
    essential_vertices,
    minimalize,
    trivial_arrows,
)
from .constraints import (
    KnownArrowSet,
    derive_constraints,
    is_extremal,
    transfer_subgraph,
    transfer_weight_decrease,
)
from .errors import GraphError, NotNegativeDefiniteError, UndecidableError
from .graph import (
    AUTOMORPHISM_LIMIT,
    WeightedGraph,
    automorphisms,
    incidence_matrix,
    is_negative_definite,
    is_simple,
    orbits,
)
from .io import (
    covering_to_document,
    dump_report,
    graph_digest,
    graph_to_document,
    parse_covering,
    parse_graph,
    report_document,
    serialize_covering,
)
from .topology import (
    GraphCovering,
    covering_components,
    cyclic_cover_along_loop,
    enumerate_simple_loops,
    fiber_product,
    girth_nontrivial,
    indice_cover,
    indice_product,
    verify_covering,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from None


def load_graph(source: str, seed: int = 0) -> WeightedGraph:
    if source.startswith("corpus:"):
        return corpus.get(source[len("corpus:") :]).graph
    if source.startswith("random:"):
        try:
            n = int(source[len("random:") :])
        except ValueError:
            raise UsageError(f"bad random graph size in {source!r}") from None
        return corpus.random_negative_definite(seed, n)
    return parse_graph(_read_text(source))


def _ordered(g: WeightedGraph, ids) -> list[str]:
    return sorted(ids, key=g.index.__getitem__)


def _girth_value(x) -> int | str:
    return "infinite" if x == math.inf else int(x)


# ----------------------------------------------------------------------
# per-graph commands; each returns (exit code, result payload, text lines)


def cmd_check(g, args):
    cert = is_negative_definite(g)
    result = {
        "negative_definite": cert.negative_definite,
        "leading_minors": list(cert.minors),
        "failed_at": cert.failed_at,
        "incidence_matrix": incidence_matrix(g).as_lists(),
        "vertex_order": list(g.ids),
        "simple": is_simple(g),
        "betti_number": g.betti_number(),
    }
    verdict = "negative definite" if cert else f"NOT negative definite (minor {cert.failed_at})"
    lines = [verdict, f"leading minors: {list(cert.minors)}"]
    return (EXIT_OK if cert else EXIT_NEGATIVE), result, lines


def _graph_or_smooth(g):
    return "smooth point" if g is SMOOTH_POINT else graph_to_document(g)


def cmd_minimalize(g, args):
    trace = minimalize(g)
    result = {
        "steps": [
            {"contracted": s.contracted_vertex, "carrier": _ordered(g, s.neighbors_at_contraction)}
            for s in trace.steps
        ],
        "final_graph": _graph_or_smooth(trace.final_graph),
        "carrier_map": {v: _ordered(g, c) for v, c in trace.carrier_map.items()},
        "non_representable": trace.non_representable,
    }
    lines = [f"contract {s.contracted_vertex}" for s in trace.steps] or ["already minimal"]
    lines.append(
        "final: smooth point" if trace.final_graph is SMOOTH_POINT else f"final: {trace.final_graph}"
    )
    if trace.non_representable:
        lines.append("minimal model not graph-representable")
        return EXIT_NEGATIVE, result, lines
    return EXIT_OK, result, lines


def cmd_essentials(g, args):
    ess = _ordered(g, essential_vertices(g))
    return EXIT_OK, {"essential": ess}, [f"essential: {', '.join(ess) or '(none)'}"]


def cmd_trivial_arrows(g, args):
    arrows = trivial_arrows(g, args.order_limit)
    items = [{"tail": u, "head": v, "order": list(arrows.witnesses[(u, v)])} for u, v in arrows.witnesses]
    lines = [f"{u} -> {v}" for u, v in arrows.witnesses] or ["no trivial arrows"]
    return EXIT_OK, {"arrows": items}, lines


def cmd_autos(g, args):
    group = automorphisms(g, args.auto_limit)
    result = {
        "order": len(group),
        "automorphisms": [{k: phi[k] for k in g.ids} for phi in group],
        "orbits": orbits(g, group),
    }
    lines = [f"group order {len(group)}", f"orbits: {orbits(g, group)}"]
    return EXIT_OK, result, lines


def _loop_doc(lp):
    return {"vertices": list(lp.vertices), "edges": list(lp.edges)}


def cmd_loops(g, args):
    loops = enumerate_simple_loops(g)
    result = {"count": len(loops), "loops": [_loop_doc(lp) for lp in loops]}
    lines = [f"{len(loops)} simple loops"] + [" ".join(lp.vertices) for lp in loops]
    return EXIT_OK, result, lines


def cmd_girth(g, args):
    girth = _girth_value(girth_nontrivial(g))
    return EXIT_OK, {"girth": girth}, [f"girth: {girth}"]


def _write_covering(c: GraphCovering, args) -> None:
    if args.output:
        Path(args.output).write_text(serialize_covering(c), encoding="utf-8")


def cmd_cover(g, args):
    loops = enumerate_simple_loops(g)
    if not 0 <= args.loop < len(loops):
        raise UsageError(f"--loop {args.loop} out of range: graph has {len(loops)} simple loops")
    c = cyclic_cover_along_loop(g, loops[args.loop], args.degree)
    _write_covering(c, args)
    check = verify_covering(c)
    result = {"loop": _loop_doc(loops[args.loop]), "valid": check.valid, "covering": covering_to_document(c)}
    lines = [
        f"degree {c.degree} covering along loop {' '.join(loops[args.loop].vertices)}",
        f"total: {len(c.total)} vertices, {len(c.total.edges)} edges; valid: {check.valid}",
    ]
    return EXIT_OK, result, lines


def cmd_indice_cover(g, args):
    product, loops = indice_product(g, args.degree)
    c = indice_cover(g, args.degree)
    _write_covering(c, args)
    girth = _girth_value(girth_nontrivial(c.total))
    result = {
        "simple_loops": len(loops),
        "product_degree": product.degree,
        "product_components": len(product.total.components()),
        "degree": c.degree,
        "girth": girth,
        "valid": verify_covering(c).valid,
        "covering": covering_to_document(c),
    }
    lines = [
        f"{len(loops)} simple loops; product degree {product.degree}",
        f"component: degree {c.degree}, {len(c.total)} vertices, girth {girth}",
    ]
    return EXIT_OK, result, lines


def _report_to_dict(report):
    g = report.graph
    return {
        "essential": _ordered(g, report.essential),
        "certified_in_image": _ordered(g, report.certified_in_image),
        "bijectivity_certified": report.bijectivity_certified,
        "structural_constraints": dict(report.structural_constraints),
        "statuses": [
            {
                "tail": u,
                "head": v,
                "status": st.status,
                "justifications": [j.to_dict() for j in st.justifications],
            }
            for (u, v), st in report.statuses.items()
        ],
    }


def cmd_constraints(g, args):
    report = derive_constraints(g, limit=args.auto_limit, order_limit=args.order_limit)
    result = _report_to_dict(report)
    lines = [f"{u} -> {v}: {st.status}" for (u, v), st in report.statuses.items()]
    lines.append(f"certified in image: {', '.join(result['certified_in_image']) or '(none)'}")
    return EXIT_OK, result, lines


def cmd_certify(g, args):
    report = derive_constraints(g, limit=args.auto_limit, order_limit=args.order_limit)
    certified = _ordered(g, report.certified_in_image)
    result = {
        "certified_in_image": certified,
        "essential": _ordered(g, report.essential),
        "bijectivity_certified": report.bijectivity_certified,
    }
    lines = [f"certified in image: {', '.join(certified) or '(none)'}"]
    if report.bijectivity_certified:
        lines.append("Nash bijectivity certified")
    return EXIT_OK, result, lines


def cmd_extremal(g, args):
    res = is_extremal(g, order_limit=args.order_limit)
    result = {
        "extremal": res.extremal,
        "witnesses": [
            {
                "vertex": w.vertex,
                "raised_weight": w.raised_weight,
                "negative_definite": w.negative_definite,
                "trivial_arrows_before": w.trivial_arrows_before,
                "trivial_arrows_after": w.trivial_arrows_after,
                "clause": w.clause,
            }
            for w in res.witnesses
        ],
    }
    lines = ["extremal" if res.extremal else "not extremal"]
    lines += [f"  {w.vertex}: {w.clause}" for w in res.witnesses]
    return (EXIT_OK if res.extremal else EXIT_NEGATIVE), result, lines


GRAPH_COMMANDS: dict[str, tuple[Callable, str]] = {
    "check": (cmd_check, "exact negative-definiteness test"),
    "minimalize": (cmd_minimalize, "contract (-1)-curves down to the minimal model"),
    "essentials": (cmd_essentials, "vertices surviving in the minimal model"),
    "trivial-arrows": (cmd_trivial_arrows, "arrows forced by contraction sequences"),
    "autos": (cmd_autos, "automorphism group"),
    "loops": (cmd_loops, "simple loops of a simple graph"),
    "girth": (cmd_girth, "fewest vertices on a non-trivial loop"),
    "cover": (cmd_cover, "cyclic covering along a simple loop"),
    "indice-cover": (cmd_indice_cover, "covering with every non-trivial loop long"),
    "constraints": (cmd_constraints, "status of every ordered vertex pair"),
    "certify": (cmd_certify, "essential vertices certified in the Nash image"),
    "extremal": (cmd_extremal, "extremality test"),
}


# ----------------------------------------------------------------------
# commands with other inputs


def cmd_fiber_product(args):
    c1 = parse_covering(_read_text(args.first))
    c2 = parse_covering(_read_text(args.second))
    prod = fiber_product(c1, c2)
    if args.component is not None:
        comps = covering_components(prod)
        if not 0 <= args.component < len(comps):
            raise UsageError(f"--component {args.component} out of range ({len(comps)} components)")
        prod = comps[args.component]
    _write_covering(prod, args)
    result = {
        "degree": prod.degree,
        "components": len(prod.total.components()),
        "valid": verify_covering(prod).valid,
        "covering": covering_to_document(prod),
    }
    lines = [f"degree {prod.degree}, {len(prod.total)} vertices, {result['components']} components"]
    return EXIT_OK, None, result, lines


def _pairs(items, what) -> list[tuple[str, str]]:
    out = []
    for item in items or ():
        parts = item.split(":")
        if len(parts) != 2 or not all(parts):
            raise UsageError(f"bad {what} {item!r}: expected A:B")
        out.append((parts[0], parts[1]))
    return out


def cmd_compare(args):
    g_from = load_graph(args.first, args.seed)
    g_to = load_graph(args.second, args.seed)
    mapping = dict(_pairs(args.map, "--map")) or {v: v for v in g_from.ids}
    if args.mode == "subgraph":
        known = KnownArrowSet.asserted(g_from, _pairs(args.arrow, "--arrow"))
        out = transfer_subgraph(g_from, g_to, mapping, known)
    else:
        # arrows live on the lowered graph (second) and are pulled back to the first
        known = KnownArrowSet.asserted(g_to, _pairs(args.arrow, "--arrow"))
        out = transfer_weight_decrease(g_from, g_to, mapping, known)
    arrows = sorted(out.arrows)
    result = {
        "mode": args.mode,
        "target": out.graph_name,
        "arrows": [
            {
                "tail": u,
                "head": v,
                "provenance": out.provenance[(u, v)].source,
                "note": out.provenance[(u, v)].note,
                "witness": (
                    graph_to_document(out.provenance[(u, v)].witness)
                    if out.provenance[(u, v)].witness is not None
                    else None
                ),
            }
            for u, v in arrows
        ],
    }
    lines = [f"{u} -> {v} ({out.provenance[(u, v)].source})" for u, v in arrows] or ["no arrows"]
    return EXIT_OK, graph_digest(g_from), result, lines


def cmd_corpus(args):
    if args.action == "list":
        result = {"entries": [{"name": n, "notes": corpus.get(n).notes} for n in corpus.names()]}
        lines = [f"{n:14} {corpus.get(n).notes}" for n in corpus.names()]
        return EXIT_OK, None, result, lines
    if not args.name:
        raise UsageError("corpus show needs a NAME")
    entry = corpus.get(args.name)
    result = {
        "name": entry.name,
        "notes": entry.notes,
        "flags": sorted(entry.flags),
        "graph": graph_to_document(entry.graph),
    }
    return EXIT_OK, graph_digest(entry.graph), result, [str(entry.graph), entry.notes]


# ----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--seed", type=int, default=0, help="seed for random:N inputs")
    p.add_argument("--limit", type=int, default=None, help="vertex cap for exhaustive searches")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nashgraph", description="Weighted resolution graph calculus and Nash-adjacency constraints."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in GRAPH_COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("graphs", nargs="+", metavar="GRAPH")
        _common(p)
        if name == "cover":
            p.add_argument("--loop", type=int, default=0, help="index into the simple-loop list")
        if name in ("cover", "indice-cover"):
            p.add_argument("--degree", type=int, required=True)
            p.add_argument("-o", "--output", help="write the covering document here")
    p = sub.add_parser("fiber-product", help="fiber product of two covering files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--component", type=int, default=None, help="keep only this connected component")
    p.add_argument("-o", "--output")
    _common(p)
    p = sub.add_parser("compare", help="transfer known arrows between related graphs")
    p.add_argument("first", metavar="SMALL_OR_G1")
    p.add_argument("second", metavar="BIG_OR_G2")
    p.add_argument("--mode", choices=("subgraph", "weights"), required=True)
    p.add_argument("--map", action="append", metavar="A:B", help="vertex of first -> vertex of second")
    p.add_argument("--arrow", action="append", metavar="U:V", help="known arrow (repeatable)")
    _common(p)
    p = sub.add_parser("corpus", help="built-in reference graphs")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    _common(p)
    return parser


def _emit(docs: list[dict], texts: list[list[str]], as_json: bool, out) -> None:
    if as_json:
        payload = docs[0] if len(docs) == 1 else docs
        out.write(dump_report(payload) + "\n")
    else:
        for i, lines in enumerate(texts):
            if len(texts) > 1:
                out.write(f"== {docs[i].get('source', '')}\n")
            out.write("\n".join(lines) + "\n")


def _error_result(exc: Exception) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.auto_limit = args.limit if args.limit is not None else AUTOMORPHISM_LIMIT
    args.order_limit = args.limit if args.limit is not None else ORDER_SEARCH_LIMIT

    docs, texts, codes = [], [], []

    def record(code, digest, result, lines, source=None):
        doc = report_document(argv, digest, result)
        if source is not None:
            doc["source"] = source
        docs.append(doc)
        texts.append(lines)
        codes.append(code)

    if args.command in GRAPH_COMMANDS:
        handler = GRAPH_COMMANDS[args.command][0]
        multi = len(args.graphs) > 1
        for source in args.graphs:
            digest = None
            try:
                g = load_graph(source, args.seed)
                digest = graph_digest(g)
                code, result, lines = handler(g, args)
            except (NotNegativeDefiniteError, UndecidableError) as exc:
                code, result, lines = EXIT_NEGATIVE, {"verdict": str(exc)}, [str(exc)]
            except (GraphError, UsageError) as exc:
                print(f"error: {source}: {exc}", file=sys.stderr)
                code, result, lines = EXIT_USAGE, _error_result(exc), [f"error: {exc}"]
            record(code, digest, result, lines, source if multi else None)
    else:
        handler = {"fiber-product": cmd_fiber_product, "compare": cmd_compare, "corpus": cmd_corpus}[
            args.command
        ]
        try:
            code, digest, result, lines = handler(args)
        except (NotNegativeDefiniteError, UndecidableError) as exc:
            code, digest, result, lines = EXIT_NEGATIVE, None, {"verdict": str(exc)}, [str(exc)]
        except (GraphError, UsageError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            code, digest, result, lines = EXIT_USAGE, None, _error_result(exc), [f"error: {exc}"]
        record(code, digest, result, lines)

    _emit(docs, texts, args.json, out)
    return max(codes)


if __name__ == "__main__":
    raise SystemExit(main())
