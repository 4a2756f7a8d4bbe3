"""Weighted dual graphs, incidence matrices, definiteness and symmetries.

A weighted graph carries two integers per vertex: the genus of the
corresponding exceptional curve and its self-intersection number.  Edges are
intersection points, so parallel edges are allowed but self-loops are not.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InvalidGraphError, SearchLimitError

AUTOMORPHISM_LIMIT = 12


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int
    weight: int


@dataclass(frozen=True)
class WeightedGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str], ...]
    name: str | None = None
    # fiber products of coverings may fall apart into several components
    allow_disconnected: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple((str(a), str(b)) for a, b in self.edges))
        self._validate()

    def _validate(self) -> None:
        if not self.vertices:
            raise InvalidGraphError("empty", "a graph needs at least one vertex")
        seen: set[str] = set()
        for v in self.vertices:
            if v.id in seen:
                raise InvalidGraphError("duplicate id", f"vertex id {v.id!r} appears twice")
            seen.add(v.id)
            if v.genus < 0:
                raise InvalidGraphError("negative genus", f"vertex {v.id!r} has genus {v.genus}")
        for i, (a, b) in enumerate(self.edges):
            for end in (a, b):
                if end not in seen:
                    raise InvalidGraphError(
                        "dangling edge", f"edge {i} references unknown vertex {end!r}"
                    )
            if a == b:
                raise InvalidGraphError("self-loop", f"edge {i} joins {a!r} to itself")
        if not self.allow_disconnected and len(self.components()) > 1:
            raise InvalidGraphError("disconnected", "the graph has more than one component")

    # ------------------------------------------------------------------
    # construction helpers

    @classmethod
    def chain(cls, *weights: int, ids: Sequence[str] | None = None, name: str | None = None):
        """Linear chain of rational vertices with the given self-intersections."""
        ids = list(ids) if ids is not None else [f"v{i + 1}" for i in range(len(weights))]
        verts = [Vertex(i, 0, w) for i, w in zip(ids, weights)]
        edges = [(ids[i], ids[i + 1]) for i in range(len(ids) - 1)]
        return cls(tuple(verts), tuple(edges), name)

    @classmethod
    def build(
        cls,
        vertices: Iterable[tuple[str, int, int] | Vertex],
        edges: Iterable[tuple[str, str]],
        name: str | None = None,
        allow_disconnected: bool = False,
    ) -> WeightedGraph:
        """Build from ``(id, genus, weight)`` triples and id pairs."""
        verts = tuple(v if isinstance(v, Vertex) else Vertex(*v) for v in vertices)
        return cls(verts, tuple(edges), name, allow_disconnected)

    def replace(self, **changes) -> WeightedGraph:
        data = dict(
            vertices=self.vertices,
            edges=self.edges,
            name=self.name,
            allow_disconnected=self.allow_disconnected,
        )
        data.update(changes)
        return WeightedGraph(**data)

    def with_weight(self, vid: str, weight: int) -> WeightedGraph:
        verts = tuple(
            Vertex(v.id, v.genus, weight) if v.id == vid else v for v in self.vertices
        )
        return self.replace(vertices=verts)

    def relabel(self, mapping: Mapping[str, str], order: Sequence[str] | None = None) -> WeightedGraph:
        """Rename vertices; ``order`` optionally lists the new ids in the desired vertex order."""
        verts = [Vertex(mapping[v.id], v.genus, v.weight) for v in self.vertices]
        if order is not None:
            by_id = {v.id: v for v in verts}
            verts = [by_id[i] for i in order]
        edges = [(mapping[a], mapping[b]) for a, b in self.edges]
        return self.replace(vertices=tuple(verts), edges=tuple(edges))

    # ------------------------------------------------------------------
    # queries

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def index(self) -> dict[str, int]:
        return {vid: i for i, vid in enumerate(self.ids)}

    @cached_property
    def _by_id(self) -> dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def _incident(self) -> dict[str, tuple[int, ...]]:
        inc: dict[str, list[int]] = {vid: [] for vid in self.ids}
        for i, (a, b) in enumerate(self.edges):
            inc[a].append(i)
            inc[b].append(i)
        return {k: tuple(v) for k, v in inc.items()}

    @cached_property
    def _multiplicity(self) -> Counter:
        return Counter(frozenset(e) for e in self.edges)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, vid: object) -> bool:
        return vid in self._by_id

    def vertex(self, vid: str) -> Vertex:
        return self._by_id[vid]

    def weight(self, vid: str) -> int:
        return self._by_id[vid].weight

    def genus(self, vid: str) -> int:
        return self._by_id[vid].genus

    def incident_edges(self, vid: str) -> tuple[int, ...]:
        """Indices of the edges at ``vid``."""
        return self._incident[vid]

    def valence(self, vid: str) -> int:
        return len(self._incident[vid])

    def neighbors(self, vid: str) -> list[str]:
        """Neighbors of ``vid`` with repetition for parallel edges, in edge order."""
        out = []
        for i in self._incident[vid]:
            a, b = self.edges[i]
            out.append(b if a == vid else a)
        return out

    def other_end(self, edge: int, vid: str) -> str:
        a, b = self.edges[edge]
        return b if a == vid else a

    def multiplicity(self, u: str, v: str) -> int:
        return self._multiplicity[frozenset((u, v))] if u != v else 0

    def components(self) -> list[list[str]]:
        adj: dict[str, list[str]] = {vid: [] for vid in (v.id for v in self.vertices)}
        for a, b in self.edges:
            if a in adj and b in adj:
                adj[a].append(b)
                adj[b].append(a)
        seen: set[str] = set()
        comps = []
        for start in adj:
            if start in seen:
                continue
            seen.add(start)
            comp, queue = [], deque([start])
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            comps.append(sorted(comp, key=lambda i: self.index[i]))
        return comps

    def betti_number(self) -> int:
        """First Betti number of the underlying 1-complex."""
        return len(self.edges) - len(self.vertices) + len(self.components())

    def __str__(self) -> str:
        verts = ", ".join(
            f"{v.id}({v.weight}{', g=' + str(v.genus) if v.genus else ''})" for v in self.vertices
        )
        edges = ", ".join(f"{a}-{b}" for a, b in self.edges)
        head = self.name or "graph"
        return f"{head}: [{verts}] edges [{edges}]"


# ----------------------------------------------------------------------
# incidence matrix and definiteness


@dataclass(frozen=True)
class IncidenceMatrix:
    order: int
    entries: tuple[tuple[int, ...], ...]
    vertex_order: tuple[str, ...]

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class DefinitenessCertificate:
    """Outcome of Sylvester's criterion.

    ``minors`` holds the leading principal minors computed before the verdict
    was reached. On success ``minor_signs`` lists their signs; on failure
    ``failed_at`` is the 1-based order of the first minor whose sign is not
    ``(-1)**k``.
    """

    negative_definite: bool
    minors: tuple[int, ...]
    minor_signs: tuple[int, ...] | None = None
    failed_at: int | None = None

    def __bool__(self) -> bool:
        return self.negative_definite


def incidence_matrix(g: WeightedGraph) -> IncidenceMatrix:
    n = len(g.vertices)
    rows = [[0] * n for _ in range(n)]
    for i, v in enumerate(g.vertices):
        rows[i][i] = v.weight
    for a, b in g.edges:
        i, j = g.index[a], g.index[b]
        rows[i][j] += 1
        rows[j][i] += 1
    return IncidenceMatrix(n, tuple(tuple(r) for r in rows), g.ids)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def leading_minors(matrix: Sequence[Sequence[int]]) -> Iterator[int]:
    """Yield the leading principal minors of a square integer matrix in order.

    Fraction-free (Bareiss) elimination without pivoting: after eliminating
    the first ``k`` columns the ``(k, k)`` entry equals the ``(k+1)``-th
    leading minor. Stops early once a zero pivot appears, since elimination
    cannot continue past it without row exchanges.
    """
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        yield pivot
        if pivot == 0:
            return
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact: Sylvester's identity guarantees divisibility
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot


def is_negative_definite(g: WeightedGraph | IncidenceMatrix) -> DefinitenessCertificate:
    m = g if isinstance(g, IncidenceMatrix) else incidence_matrix(g)
    minors: list[int] = []
    for k, minor in enumerate(leading_minors(m.entries), start=1):
        minors.append(minor)
        if _sign(minor) != (-1) ** k:
            return DefinitenessCertificate(False, tuple(minors), failed_at=k)
    return DefinitenessCertificate(True, tuple(minors), tuple(_sign(x) for x in minors))


def is_simple(g: WeightedGraph) -> bool:
    return all(c < 2 for c in g._multiplicity.values())


# ----------------------------------------------------------------------
# isomorphisms


def _signature(g: WeightedGraph, vid: str) -> tuple:
    v = g.vertex(vid)
    mults = Counter(g.neighbors(vid)).values()
    return (v.genus, v.weight, tuple(sorted(mults)))


def _isomorphisms(g1: WeightedGraph, g2: WeightedGraph, limit: int) -> Iterator[dict[str, str]]:
    n = len(g1.vertices)
    for what, g in (("first graph", g1), ("second graph", g2)):
        if len(g.vertices) > limit:
            raise SearchLimitError(f"isomorphism search on {what}", len(g.vertices), limit)
    if n != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return
    ids1, ids2 = g1.ids, g2.ids
    m1 = incidence_matrix(g1).entries
    m2 = incidence_matrix(g2).entries
    sig2 = [_signature(g2, v) for v in ids2]
    candidates = [
        [j for j in range(n) if sig2[j] == _signature(g1, ids1[i])] for i in range(n)
    ]
    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> Iterator[dict[str, str]]:
        if i == n:
            yield {ids1[k]: ids2[image[k]] for k in range(n)}
            return
        for j in candidates[i]:
            if used[j]:
                continue
            if any(m1[i][k] != m2[j][image[k]] for k in range(i)):
                continue
            image[i], used[j] = j, True
            yield from extend(i + 1)
            image[i], used[j] = -1, False

    yield from extend(0)


def automorphisms(g: WeightedGraph, limit: int = AUTOMORPHISM_LIMIT) -> list[dict[str, str]]:
    """All weight-, genus- and multiplicity-preserving vertex permutations.

    Returned in lexicographic order of the image sequence (identity first).
    Raises :class:`SearchLimitError` above ``limit`` vertices.
    """
    return list(_isomorphisms(g, g, limit))


def are_isomorphic(
    g1: WeightedGraph, g2: WeightedGraph, limit: int = AUTOMORPHISM_LIMIT
) -> dict[str, str] | None:
    """Lexicographically least isomorphism ``g1 -> g2``, or ``None``."""
    return next(_isomorphisms(g1, g2, limit), None)


def orbits(g: WeightedGraph, group: Iterable[Mapping[str, str]]) -> list[list[str]]:
    group = list(group)
    seen: set[str] = set()
    out = []
    for vid in g.ids:
        if vid in seen:
            continue
        orbit = sorted({phi[vid] for phi in group} | {vid}, key=g.index.__getitem__)
        seen.update(orbit)
        out.append(orbit)
    return out
