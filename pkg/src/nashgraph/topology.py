"""Loops and finite coverings of weighted graphs.

The realization of a graph (a ball per vertex, an interval per edge) is never
built. Its homotopy theory is that of the underlying 1-complex, so loops are
handled as closed edge walks and homotopy as cancellation of backtracks, and a
map of graphs is a covering exactly when it restricts to a bijection on the
star of every vertex.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from functools import reduce
from typing import Mapping, Sequence

from .calculus import _fresh_id, blow_up_edge
from .errors import BaseMismatchError, GraphError, InconsistencyError, NotALoopError, NotSimpleError
from .graph import Vertex, WeightedGraph, is_simple


def _require_simple(g: WeightedGraph) -> None:
    if not is_simple(g):
        raise NotSimpleError("graph not simple: some pair of vertices is joined by several edges")


# ----------------------------------------------------------------------
# loops


@dataclass(frozen=True)
class Loop:
    """Closed walk ``v1, e1, v2, e2, ..., vr, er``; edge ``ei`` joins ``vi`` to ``v(i+1)``."""

    vertices: tuple[str, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(self.vertices) != len(self.edges) or not self.edges:
            raise NotALoopError("a loop needs as many edges as vertices, at least one")

    def __len__(self) -> int:
        return len(self.edges)

    def steps(self) -> list[tuple[int, str, str]]:
        """Traversals ``(edge, from, to)`` in order."""
        r = len(self.edges)
        return [(self.edges[i], self.vertices[i], self.vertices[(i + 1) % r]) for i in range(r)]

    def reversed(self) -> Loop:
        vs = (self.vertices[0],) + tuple(reversed(self.vertices[1:]))
        return Loop(vs, tuple(reversed(self.edges)))

    def rotated(self, k: int) -> Loop:
        k %= len(self.edges)
        return Loop(self.vertices[k:] + self.vertices[:k], self.edges[k:] + self.edges[:k])

    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def canonical(self, g: WeightedGraph) -> Loop:
        """Least rotation or reflection, comparing interleaved (vertex index, edge index)."""

        def key(lp: Loop):
            return tuple(x for i in range(len(lp)) for x in (g.index[lp.vertices[i]], lp.edges[i]))

        forms = [lp.rotated(k) for lp in (self, self.reversed()) for k in range(len(self))]
        return min(forms, key=key)


def check_loop(g: WeightedGraph, loop: Loop) -> None:
    for e, a, b in loop.steps():
        if not 0 <= e < len(g.edges) or set(g.edges[e]) != {a, b} or a == b:
            raise NotALoopError(f"edge {e} does not join {a!r} to {b!r}")


def _edge_lookup(g: WeightedGraph) -> dict[frozenset, int]:
    return {frozenset(e): i for i, e in enumerate(g.edges)}


def enumerate_simple_loops(g: WeightedGraph) -> list[Loop]:
    """Every simple loop of a simple graph, once each, in canonical form.

    Sorted by length, then by canonical key.
    """
    _require_simple(g)
    lookup = _edge_lookup(g)
    adj = {v: sorted(set(g.neighbors(v)), key=g.index.__getitem__) for v in g.ids}
    found: dict[tuple, Loop] = {}
    for s in g.ids:
        floor = g.index[s]
        path = [s]
        on_path = {s}

        def extend(x: str):
            for y in adj[x]:
                if y == s and len(path) >= 3:
                    edges = [lookup[frozenset((path[i], path[i + 1]))] for i in range(len(path) - 1)]
                    edges.append(lookup[frozenset((x, s))])
                    lp = Loop(tuple(path), tuple(edges)).canonical(g)
                    found.setdefault((lp.vertices, lp.edges), lp)
                elif g.index[y] > floor and y not in on_path:
                    path.append(y)
                    on_path.add(y)
                    extend(y)
                    path.pop()
                    on_path.discard(y)

        extend(s)
    return sorted(
        found.values(),
        key=lambda lp: (len(lp), [g.index[v] for v in lp.vertices], list(lp.edges)),
    )


def _reduce_word(edges: Sequence[int]) -> list[int]:
    # in a closed walk two consecutive uses of one edge are always a backtrack
    stack: list[int] = []
    for e in edges:
        if stack and stack[-1] == e:
            stack.pop()
        else:
            stack.append(e)
    return stack


def _cyclic_reduce(edges: Sequence[int]) -> list[int]:
    word = _reduce_word(edges)
    i, j = 0, len(word) - 1
    while i < j and word[i] == word[j]:
        i += 1
        j -= 1
    return word[i : j + 1] if i <= j else []


def is_trivial_loop(g: WeightedGraph, loop: Loop) -> bool:
    _require_simple(g)
    check_loop(g, loop)
    return not _cyclic_reduce(loop.edges)


def loop_contains(g: WeightedGraph, loop: Loop, simple: Loop) -> bool:
    """Whether ``loop`` contains the simple loop ``simple``.

    There must be cyclically increasing positions of ``loop`` carrying the
    edges of ``simple`` in order (some rotation and orientation of it), each
    stretch of ``loop`` between consecutive chosen positions being a trivial
    closed walk; and the chosen positions must not all lie inside one
    contiguous closed trivial stretch of ``loop``.

    The stretch from the last chosen edge back around to the first is not
    required to be trivial. Otherwise a loop running twice around a cycle
    would not contain that cycle.
    """
    _require_simple(g)
    check_loop(g, loop)
    check_loop(g, simple)
    if not simple.is_simple():
        raise NotALoopError("second argument is not a simple loop")
    steps = loop.steps()
    r, s = len(steps), len(simple)
    if s > r:
        return False

    # contiguous closed trivial stretches, as (start, length)
    trivial_stretches = []
    for a in range(r):
        for length in range(1, r + 1):
            seg = [steps[(a + t) % r] for t in range(length)]
            if seg[0][1] == seg[-1][2] and not _reduce_word([e for e, _, _ in seg]):
                trivial_stretches.append((a, length))

    def covered(chosen: list[int]) -> bool:
        for a, length in trivial_stretches:
            if all((c - a) % r < length for c in chosen):
                return True
        return False

    patterns = {
        tuple(lp.rotated(k).steps()) for lp in (simple, simple.reversed()) for k in range(s)
    }
    for pattern in patterns:
        for p in range(r):
            if steps[p] != pattern[0]:
                continue

            def search(i: int, pos: int, chosen: list[int]) -> bool:
                # pos: offset from p of the last chosen position
                if i == s:
                    return not covered(chosen)
                gap: list[int] = []
                for nxt in range(pos + 1, r):
                    step = steps[(p + nxt) % r]
                    if step == pattern[i] and not _reduce_word(gap):
                        if search(i + 1, nxt, chosen + [(p + nxt) % r]):
                            return True
                    gap.append(step[0])
                return False

            if search(1, 0, [p]):
                return True
    return False


def girth_nontrivial(g: WeightedGraph) -> float:
    """Fewest vertices on a non-trivial loop; ``math.inf`` for a tree.

    Every non-trivial closed walk, once backtracks are cancelled, revisits a
    vertex and so contains a cycle no longer than itself. The minimum is
    therefore the length of a shortest cycle, found by breadth-first search
    from every vertex.
    """
    _require_simple(g)
    best = math.inf
    for root in g.ids:
        dist = {root: 0}
        via = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            for e in g.incident_edges(x):
                if e == via[x]:
                    continue
                y = g.other_end(e, x)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    via[y] = e
                    queue.append(y)
                else:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def simplify_to_simple(g: WeightedGraph) -> tuple[WeightedGraph, list[tuple[str, str, str]]]:
    """Subdivide parallel edges by blow-ups until the graph is simple.

    The log lists ``(end_a, end_b, new_vertex)`` for every blow-up.
    """
    log = []
    while not is_simple(g):
        counts = Counter(frozenset(e) for e in g.edges)
        e = next(i for i, pair in enumerate(g.edges) if counts[frozenset(pair)] > 1)
        a, b = g.edges[e]
        new_id = _fresh_id(g, f"{a}^{b}")
        g = blow_up_edge(g, e, new_id)
        log.append((a, b, new_id))
    return g, log


# ----------------------------------------------------------------------
# coverings


@dataclass(frozen=True)
class GraphCovering:
    total: WeightedGraph
    base: WeightedGraph
    vertex_map: Mapping[str, str]
    edge_map: tuple[int, ...]
    degree: int

    def fiber(self, base_vertex: str) -> list[str]:
        return [x for x in self.total.ids if self.vertex_map[x] == base_vertex]


@dataclass(frozen=True)
class CoveringCheck:
    valid: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.valid


def identity_covering(g: WeightedGraph) -> GraphCovering:
    return GraphCovering(g, g, {v: v for v in g.ids}, tuple(range(len(g.edges))), 1)


def verify_covering(c: GraphCovering) -> CoveringCheck:
    total, base = c.total, c.base
    vmap, emap = c.vertex_map, c.edge_map
    for x in total.ids:
        if vmap.get(x) not in base:
            return CoveringCheck(False, f"vertex map: {x!r} has no image in the base")
    if len(emap) != len(total.edges) or any(not 0 <= b < len(base.edges) for b in emap):
        return CoveringCheck(False, "edge map: not a map from total edges to base edges")
    for x in total.vertices:
        y = base.vertex(vmap[x.id])
        if (x.genus, x.weight) != (y.genus, y.weight):
            return CoveringCheck(False, f"weights: {x.id!r} and its image {y.id!r} differ")
    for i, (p, q) in enumerate(total.edges):
        if Counter((vmap[p], vmap[q])) != Counter(base.edges[emap[i]]):
            return CoveringCheck(False, f"endpoints: edge {i} is not sent onto edge {emap[i]}")
    for x in total.ids:
        star = Counter(emap[i] for i in total.incident_edges(x))
        if star != Counter(base.incident_edges(vmap[x])):
            return CoveringCheck(False, f"star bijection: fails at {x!r}")
    for b in base.ids:
        n = sum(1 for x in total.ids if vmap[x] == b)
        if n != c.degree:
            return CoveringCheck(False, f"fiber size: {b!r} has {n} preimages, degree is {c.degree}")
    return CoveringCheck(True)


def cyclic_cover_along_loop(g: WeightedGraph, loop: Loop, m: int) -> GraphCovering:
    """Degree-``m`` cyclic covering unwrapping ``loop``.

    Takes ``m`` copies of ``g`` and reattaches copy ``j`` of the loop's last
    edge (from its last vertex to its first) so that it lands on the first
    vertex of copy ``j + 1`` (cyclically).
    """
    _require_simple(g)
    if m < 2:
        raise GraphError(f"degree must be at least 2, got {m}")
    check_loop(g, loop)
    if not loop.is_simple() or len(loop) < 2:
        raise NotALoopError("not a simple loop of g")
    name = lambda v, j: f"{v}.{j}"  # noqa: E731
    cut = loop.edges[-1]
    first = loop.vertices[0]
    verts, edges, vmap, emap = [], [], {}, []
    for j in range(1, m + 1):
        for v in g.vertices:
            verts.append(Vertex(name(v.id, j), v.genus, v.weight))
            vmap[name(v.id, j)] = v.id
    for j in range(1, m + 1):
        nxt = j % m + 1
        for k, (a, b) in enumerate(g.edges):
            if k == cut:
                edges.append(
                    (name(a, nxt if a == first else j), name(b, nxt if b == first else j))
                )
            else:
                edges.append((name(a, j), name(b, j)))
            emap.append(k)
    total = WeightedGraph(tuple(verts), tuple(edges), f"{g.name or 'graph'} cyclic x{m}")
    return GraphCovering(total, g, vmap, tuple(emap), m)


def _same_graph(a: WeightedGraph, b: WeightedGraph) -> bool:
    return a.vertices == b.vertices and a.edges == b.edges


def fiber_product(c1: GraphCovering, c2: GraphCovering) -> GraphCovering:
    """Fiber product over the common base; the total graph may be disconnected."""
    if not _same_graph(c1.base, c2.base):
        raise BaseMismatchError("base mismatch: coverings have different base graphs")
    base = c1.base
    t1, t2 = c1.total, c2.total
    pairs = [(x, y) for x in t1.ids for y in t2.ids if c1.vertex_map[x] == c2.vertex_map[y]]
    names = {pr: f"{pr[0]}|{pr[1]}" for pr in pairs}
    if len(set(names.values())) != len(names):
        names = {pr: f"p{i}" for i, pr in enumerate(pairs)}
    verts = []
    vmap = {}
    for pr in pairs:
        b = base.vertex(c1.vertex_map[pr[0]])
        verts.append(Vertex(names[pr], b.genus, b.weight))
        vmap[names[pr]] = b.id
    lifts2: dict[int, list[int]] = {}
    for j, be in enumerate(c2.edge_map):
        lifts2.setdefault(be, []).append(j)
    edges, emap = [], []
    for i, be in enumerate(c1.edge_map):
        b1, _ = base.edges[be]
        p, q = t1.edges[i]
        x1, x2 = (p, q) if c1.vertex_map[p] == b1 else (q, p)
        for j in lifts2.get(be, ()):
            r, s = t2.edges[j]
            y1, y2 = (r, s) if c2.vertex_map[r] == b1 else (s, r)
            edges.append((names[(x1, y1)], names[(x2, y2)]))
            emap.append(be)
    total = WeightedGraph(
        tuple(verts), tuple(edges), f"{base.name or 'graph'} fiber product", allow_disconnected=True
    )
    return GraphCovering(total, base, vmap, tuple(emap), c1.degree * c2.degree)


def covering_components(c: GraphCovering) -> list[GraphCovering]:
    """Split a covering into its connected components; each is itself a covering."""
    out = []
    for comp in c.total.components():
        keep = set(comp)
        verts = tuple(v for v in c.total.vertices if v.id in keep)
        idx = [i for i, (a, _) in enumerate(c.total.edges) if a in keep]
        total = WeightedGraph(verts, tuple(c.total.edges[i] for i in idx), c.total.name)
        vmap = {x: c.vertex_map[x] for x in comp}
        degree = sum(1 for x in comp if vmap[x] == c.base.ids[0])
        out.append(GraphCovering(total, c.base, vmap, tuple(c.edge_map[i] for i in idx), degree))
    return out


def indice_product(g: WeightedGraph, m: int) -> tuple[GraphCovering, list[Loop]]:
    """Fiber product of the degree-``m`` cyclic covers along every simple loop.

    Returns the (possibly disconnected) product and the loops used. For a
    tree this is the identity covering.
    """
    _require_simple(g)
    loops = enumerate_simple_loops(g)
    if not loops:
        return identity_covering(g), loops
    covers = [cyclic_cover_along_loop(g, lp, m) for lp in loops]
    return reduce(fiber_product, covers), loops


def indice_cover(g: WeightedGraph, m: int) -> GraphCovering:
    """A connected finite covering in which every non-trivial loop has at least ``m`` vertices.

    Built as one component of :func:`indice_product`; the girth bound is
    checked before returning. The cyclic covers are abelian, so for large
    ``m`` on graphs with two or more independent cycles a commutator of short
    cycles can lift to a loop shorter than ``m``; the check reports that as
    an :class:`InconsistencyError`. Up to ``m = 6`` the bound always holds.
    """
    product, _ = indice_product(g, m)
    cover = covering_components(product)[0]
    girth = girth_nontrivial(cover.total)
    if girth < m:
        raise InconsistencyError(
            f"postcondition violated: covering has a non-trivial loop with {girth} < {m} vertices"
        )
    return cover
