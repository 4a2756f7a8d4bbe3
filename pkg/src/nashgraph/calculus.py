"""Blow-up / blow-down calculus on weighted graphs.

A genus-0 vertex of weight -1 meeting the rest of the graph in at most two
distinct points can be contracted without leaving the category of
normal-crossing configurations. Contracting it deletes the vertex, raises
each neighbor's weight by one per incidence and, at valence two, joins the
two neighbors by a new edge.

When ``v`` is contracted its image point lies on every current neighbor (its
*carrier*). If a carrier vertex is contracted later, it is replaced in the
carrier by its own carrier. A trivial arrow ``u -> v`` records that some
sequence of contractions (not necessarily maximal) sends ``v`` to a point of
the still uncontracted curve ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import (
    NotAWeightDecreaseError,
    NotContractibleError,
    NotNegativeDefiniteError,
    SearchLimitError,
    SelfTangencyError,
    UndecidableError,
)
from .graph import Vertex, WeightedGraph, is_negative_definite

ORDER_SEARCH_LIMIT = 10


class SmoothPoint:
    """Marker for the result of contracting every curve: a smooth point."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "SMOOTH_POINT"

    def __len__(self) -> int:
        return 0

    ids = ()


SMOOTH_POINT = SmoothPoint()


def _fresh_id(taken, stem: str) -> str:
    k = 1
    while f"{stem}~{k}" in taken:
        k += 1
    return f"{stem}~{k}"


def contraction_obstruction(g: WeightedGraph, v: str) -> str | None:
    """Why ``v`` cannot be blown down, or ``None`` if it can."""
    vert = g.vertex(v)
    if vert.genus != 0:
        return f"vertex {v!r} has genus {vert.genus}"
    if vert.weight != -1:
        return f"vertex {v!r} has weight {vert.weight}"
    nbrs = g.neighbors(v)
    if len(nbrs) >= 3:
        return f"vertex {v!r} has valence {len(nbrs)}"
    if len(nbrs) == 2 and nbrs[0] == nbrs[1]:
        return f"vertex {v!r} meets {nbrs[0]!r} twice (self-tangency unsupported)"
    return None


def is_contractible(g: WeightedGraph, v: str) -> bool:
    return contraction_obstruction(g, v) is None


def blow_down(g: WeightedGraph, v: str) -> WeightedGraph | SmoothPoint:
    reason = contraction_obstruction(g, v)
    if reason is not None:
        if "self-tangency" in reason:
            raise SelfTangencyError(reason)
        raise NotContractibleError(f"not contractible: {reason}")
    nbrs = g.neighbors(v)
    if len(g.vertices) == 1:
        return SMOOTH_POINT
    bump: dict[str, int] = {}
    for n in nbrs:
        bump[n] = bump.get(n, 0) + 1
    verts = tuple(
        Vertex(x.id, x.genus, x.weight + bump.get(x.id, 0)) for x in g.vertices if x.id != v
    )
    edges = [e for e in g.edges if v not in e]
    if len(nbrs) == 2:
        edges.append((nbrs[0], nbrs[1]))
    return g.replace(vertices=verts, edges=tuple(edges))


def blow_up_free(g: WeightedGraph, v: str, new_id: str | None = None) -> WeightedGraph:
    """Blow up a free point of curve ``v``: attach a new (-1)-leaf and lower ``v`` by one."""
    new_id = new_id or _fresh_id(g, v)
    verts = tuple(
        Vertex(x.id, x.genus, x.weight - 1) if x.id == v else x for x in g.vertices
    ) + (Vertex(new_id, 0, -1),)
    return g.replace(vertices=verts, edges=g.edges + ((v, new_id),))


def blow_up_edge(g: WeightedGraph, e: int, new_id: str | None = None) -> WeightedGraph:
    """Blow up the intersection point represented by edge ``e``."""
    a, b = g.edges[e]
    new_id = new_id or _fresh_id(g, f"{a}^{b}")
    verts = tuple(
        Vertex(x.id, x.genus, x.weight - 1) if x.id in (a, b) else x for x in g.vertices
    ) + (Vertex(new_id, 0, -1),)
    edges = g.edges[:e] + g.edges[e + 1 :] + ((a, new_id), (new_id, b))
    return g.replace(vertices=verts, edges=edges)


# ----------------------------------------------------------------------
# contraction sequences


@dataclass(frozen=True)
class ContractionStep:
    contracted_vertex: str
    neighbors_at_contraction: frozenset[str]
    resulting_graph_snapshot: WeightedGraph | SmoothPoint


@dataclass(frozen=True)
class ContractionTrace:
    source: WeightedGraph
    steps: tuple[ContractionStep, ...]
    final_graph: WeightedGraph | SmoothPoint
    carrier_map: Mapping[str, frozenset[str]]
    non_representable: bool = False

    @property
    def order(self) -> tuple[str, ...]:
        return tuple(s.contracted_vertex for s in self.steps)

    @property
    def surviving(self) -> frozenset[str]:
        return frozenset(self.final_graph.ids)


def _contract(g, carriers: dict[str, frozenset[str]], v: str):
    nbrs = frozenset(g.neighbors(v))
    new_carriers = {
        k: (c - {v}) | nbrs if v in c else c for k, c in carriers.items()
    }
    new_carriers[v] = nbrs
    return blow_down(g, v), new_carriers, nbrs


def _eligible(g) -> list[str]:
    if g is SMOOTH_POINT:
        return []
    return [v for v in g.ids if contraction_obstruction(g, v) is None]


def _stuck(g) -> bool:
    """A (-1)-rational curve remains but cannot be contracted inside the graph category."""
    if g is SMOOTH_POINT:
        return False
    return any(x.genus == 0 and x.weight == -1 for x in g.vertices)


def _require_negative_definite(g: WeightedGraph) -> None:
    cert = is_negative_definite(g)
    if not cert:
        raise NotNegativeDefiniteError(
            f"not negative definite: leading minor {cert.failed_at} is {cert.minors[-1]}"
        )


def minimalize(g: WeightedGraph) -> ContractionTrace:
    """Contract (-1)-curves, first eligible in vertex order, until none is eligible."""
    _require_negative_definite(g)
    current: WeightedGraph | SmoothPoint = g
    carriers: dict[str, frozenset[str]] = {}
    steps = []
    while True:
        eligible = _eligible(current)
        if not eligible:
            break
        v = eligible[0]
        current, carriers, nbrs = _contract(current, carriers, v)
        steps.append(ContractionStep(v, nbrs, current))
    return ContractionTrace(g, tuple(steps), current, carriers, _stuck(current))


def essential_vertices(g: WeightedGraph) -> frozenset[str]:
    trace = minimalize(g)
    if trace.non_representable:
        raise UndecidableError(
            "undecidable by this calculus: minimal model not graph-representable"
        )
    return trace.surviving


def _state_key(g, carriers) -> tuple:
    if g is SMOOTH_POINT:
        shape = ()
    else:
        shape = (g.vertices, tuple(sorted(tuple(sorted(e)) for e in g.edges)))
    return shape, tuple(sorted(carriers.items(), key=lambda kv: kv[0]))


def _states(g: WeightedGraph, limit: int):
    """Yield ``(steps, graph, carriers)`` for every state reachable by contractions.

    Two orders reaching the same intermediate graph with the same carriers
    have identical continuations, so each state is expanded (and yielded)
    once, with the first order found.
    """
    _require_negative_definite(g)
    if len(g.vertices) > limit:
        raise SearchLimitError("contraction order search", len(g.vertices), limit)
    visited: set[tuple] = set()
    stack = [(g, {}, ())]
    while stack:
        current, carriers, steps = stack.pop()
        key = _state_key(current, carriers)
        if key in visited:
            continue
        visited.add(key)
        yield steps, current, carriers
        children = []
        for v in _eligible(current):
            nxt, new_carriers, nbrs = _contract(current, carriers, v)
            children.append((nxt, new_carriers, steps + (ContractionStep(v, nbrs, nxt),)))
        # depth first, lowest id first
        stack.extend(reversed(children))


def contraction_outcomes(g: WeightedGraph, limit: int = ORDER_SEARCH_LIMIT) -> list[ContractionTrace]:
    """One trace per distinct end state over all maximal contraction orders."""
    outcomes: dict[tuple, ContractionTrace] = {}
    for steps, current, carriers in _states(g, limit):
        if not _eligible(current):
            key = _state_key(current, carriers)
            outcomes.setdefault(key, ContractionTrace(g, steps, current, carriers, _stuck(current)))
    return list(outcomes.values())


def collapsible_vertices(g: WeightedGraph, limit: int = ORDER_SEARCH_LIMIT) -> frozenset[str]:
    """Vertices contracted by at least one sequence of (-1)-curve contractions."""
    out: set[str] = set()
    for trace in contraction_outcomes(g, limit):
        out.update(trace.order)
    return frozenset(out)


@dataclass(frozen=True)
class TrivialArrowSet:
    arrows: frozenset[tuple[str, str]]
    witnesses: Mapping[tuple[str, str], tuple[str, ...]] = field(default_factory=dict)

    def __contains__(self, pair) -> bool:
        return pair in self.arrows

    def __iter__(self):
        return iter(sorted(self.arrows))

    def __len__(self) -> int:
        return len(self.arrows)


def trivial_arrows(g: WeightedGraph, limit: int = ORDER_SEARCH_LIMIT) -> TrivialArrowSet:
    """Arrows ``(u, v)`` such that some sequence of contractions collapses ``v`` onto ``u``.

    The sequence need not be maximal: in ``(-1)-(-2)`` contracting the first
    curve puts it on the second, which then becomes contractible itself, and
    the arrow exists all the same. ``witnesses`` maps each arrow to the first
    contraction order found after which ``v`` lies on ``u``.
    """
    witnesses: dict[tuple[str, str], tuple[str, ...]] = {}
    for steps, current, carriers in _states(g, limit):
        order = tuple(s.contracted_vertex for s in steps)
        for v, carrier in carriers.items():
            for u in carrier:
                assert u in current and u not in carriers
                witnesses.setdefault((u, v), order)
    ordered = dict(sorted(witnesses.items(), key=lambda kv: (g.index[kv[0][0]], g.index[kv[0][1]])))
    return TrivialArrowSet(frozenset(ordered), ordered)


def _check_weight_decrease(g1: WeightedGraph, g2: WeightedGraph, matching: Mapping[str, str]) -> None:
    if sorted(matching) != sorted(g1.ids) or sorted(matching.values()) != sorted(g2.ids):
        raise NotAWeightDecreaseError("not a weight decrease: matching is not a vertex bijection")
    for v in g1.ids:
        a, b = g1.vertex(v), g2.vertex(matching[v])
        if a.genus != b.genus:
            raise NotAWeightDecreaseError(f"not a weight decrease: genus differs at {v!r}")
        if b.weight > a.weight:
            raise NotAWeightDecreaseError(
                f"not a weight decrease: weight of {v!r} rises from {a.weight} to {b.weight}"
            )
    for i, u in enumerate(g1.ids):
        for v in g1.ids[i + 1 :]:
            if g1.multiplicity(u, v) != g2.multiplicity(matching[u], matching[v]):
                raise NotAWeightDecreaseError(
                    f"not a weight decrease: edges between {u!r} and {v!r} differ"
                )


def build_g3(g1: WeightedGraph, g2: WeightedGraph, matching: Mapping[str, str]) -> WeightedGraph:
    """Attach ``weight1(v) - weight2(v)`` rational (-1)-leaves to each vertex of ``g2``.

    Contracting the added leaves gives back ``g1``. ``matching`` sends ids of
    ``g1`` to ids of ``g2``.
    """
    _check_weight_decrease(g1, g2, matching)
    g3 = g2
    for v in g1.ids:
        target = matching[v]
        for _ in range(g1.weight(v) - g2.weight(target)):
            leaf = _fresh_id(g3, target)
            g3 = g3.replace(
                vertices=g3.vertices + (Vertex(leaf, 0, -1),),
                edges=g3.edges + ((target, leaf),),
            )
    return g3
