"""Necessary conditions on the arc-adjacency digraph of a resolution graph.

Every ordered pair of distinct vertices ``(u, v)`` receives a status:

``Trivial``
    a contraction sequence collapses ``v`` onto ``u`` (the arrow exists);
``Forbidden``
    a proven rule excludes the arrow;
``Possible``
    no rule decides it.

Rules applied by :func:`derive_constraints`:

R1  trivial arrows from exhaustive contraction-order search;
R2  an arrow ``u -> v`` needs a walk from ``u`` to ``v`` whose vertices other
    than ``u`` are all rational, so nothing non-trivial enters a curve of
    positive genus;
R3  an automorphism moving an essential vertex ``u`` forbids ``u -> phi(u)``;
R4  among essential vertices, genuine adjacency is irreflexive, has no
    2-cycles and no directed cycles. It is kept as a flag and used only to
    filter :func:`enumerate_consistent_digraphs`.

An essential vertex lies in the image of the Nash map when all of its
incoming arrows are trivial, so it is certified when every incoming pair is
Trivial or Forbidden.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .calculus import (
    ORDER_SEARCH_LIMIT,
    _check_weight_decrease,
    _require_negative_definite,
    build_g3,
    essential_vertices,
    trivial_arrows,
)
from .errors import (
    InconsistencyError,
    NotAnEmbeddingError,
    NotNegativeDefiniteError,
    PreconditionError,
    TooManyPairsError,
    TransferContradictionError,
)
from .graph import AUTOMORPHISM_LIMIT, WeightedGraph, automorphisms, is_negative_definite

TRIVIAL = "Trivial"
FORBIDDEN = "Forbidden"
POSSIBLE = "Possible"

Pair = tuple[str, str]


@dataclass(frozen=True)
class Justification:
    rule: str
    detail: str
    params: Mapping[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"rule": self.rule, "detail": self.detail, "params": dict(self.params)}


@dataclass(frozen=True)
class ArrowStatus:
    status: str
    justifications: tuple[Justification, ...] = ()


@dataclass(frozen=True)
class ConstraintReport:
    graph: WeightedGraph
    essential: frozenset[str]
    statuses: Mapping[Pair, ArrowStatus]
    certified_in_image: frozenset[str]
    structural_constraints: Mapping[str, bool]

    @property
    def bijectivity_certified(self) -> bool:
        return all(s.status != POSSIBLE for s in self.statuses.values())

    def pairs_with(self, status: str) -> list[Pair]:
        return [p for p, s in self.statuses.items() if s.status == status]


# ----------------------------------------------------------------------
# rules


def _rational_reach(g: WeightedGraph, u: str) -> set[str]:
    """Vertices reachable from ``u`` by walks whose later vertices are all rational."""
    seen = {u}
    queue = deque([u])
    reach = set()
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if g.genus(y) == 0 and y not in seen:
                seen.add(y)
                reach.add(y)
                queue.append(y)
    return reach


def _name_map(phi: Mapping[str, str]) -> dict[str, str]:
    return {k: phi[k] for k in phi if phi[k] != k}


def derive_constraints(
    g: WeightedGraph,
    *,
    group: Sequence[Mapping[str, str]] | None = None,
    limit: int = AUTOMORPHISM_LIMIT,
    order_limit: int = ORDER_SEARCH_LIMIT,
) -> ConstraintReport:
    """Status of every ordered vertex pair of ``g``.

    ``group`` overrides the automorphisms used by R3 (default: the full
    automorphism group). Raises :class:`InconsistencyError` if R1 collides
    with R2 or R3.
    """
    _require_negative_definite(g)
    essential = essential_vertices(g)
    trivial = trivial_arrows(g, order_limit)
    if group is None:
        group = automorphisms(g, limit)

    forbidden: dict[Pair, list[Justification]] = {}
    for u in g.ids:
        reach = _rational_reach(g, u)
        for v in g.ids:
            if v != u and v not in reach:
                why = (
                    f"{v} has genus {g.genus(v)}"
                    if g.genus(v) > 0
                    else f"no walk from {u} to {v} through rational vertices"
                )
                forbidden.setdefault((u, v), []).append(Justification("R2 rationality-path", why))
    for phi in group:
        for u in g.ids:
            v = phi[u]
            if u == v or u not in essential:
                continue
            pair = (u, v)
            if any(j.rule.startswith("R3") for j in forbidden.get(pair, ())):
                continue
            forbidden.setdefault(pair, []).append(
                Justification(
                    "R3 symmetry",
                    f"automorphism moves essential {u} to {v}",
                    {"automorphism": _name_map(phi)},
                )
            )

    statuses: dict[Pair, ArrowStatus] = {}
    for u in g.ids:
        for v in g.ids:
            if u == v:
                continue
            pair = (u, v)
            if pair in trivial:
                if pair in forbidden:
                    rules = ", ".join(j.rule for j in forbidden[pair])
                    raise InconsistencyError(
                        f"internal inconsistency: trivial arrow {u}->{v} also forbidden by {rules}"
                    )
                order = trivial.witnesses.get(pair, ())
                statuses[pair] = ArrowStatus(
                    TRIVIAL,
                    (
                        Justification(
                            "R1 trivial arrow",
                            f"contraction order {' '.join(order)} collapses {v} onto {u}",
                            {"order": list(order)},
                        ),
                    ),
                )
            elif pair in forbidden:
                statuses[pair] = ArrowStatus(FORBIDDEN, tuple(forbidden[pair]))
            else:
                statuses[pair] = ArrowStatus(POSSIBLE)

    certified = frozenset(
        v
        for v in essential
        if all(statuses[(u, v)].status != POSSIBLE for u in g.ids if u != v)
    )
    structure = {"irreflexive": True, "antisymmetric": True, "acyclic": True}
    return ConstraintReport(g, essential, statuses, certified, structure)


@dataclass(frozen=True)
class Certification:
    certified: frozenset[str]
    bijectivity_certified: bool
    report: ConstraintReport


def certify(g: WeightedGraph, **kwargs) -> Certification:
    report = derive_constraints(g, **kwargs)
    return Certification(report.certified_in_image, report.bijectivity_certified, report)


# ----------------------------------------------------------------------
# transfers between graphs


@dataclass(frozen=True)
class Provenance:
    source: str
    note: str = ""
    witness: WeightedGraph | None = None


@dataclass(frozen=True)
class KnownArrowSet:
    graph_name: str | None
    arrows: frozenset[Pair]
    provenance: Mapping[Pair, Provenance]

    def __post_init__(self):
        for u, v in self.arrows:
            if u == v:
                raise ValueError(f"arrow ({u}, {v}) is a loop")
            if (u, v) not in self.provenance:
                raise ValueError(f"arrow ({u}, {v}) lacks provenance")

    @classmethod
    def asserted(cls, graph: WeightedGraph, arrows: Iterable[Pair], source: str = "user"):
        arrows = frozenset(tuple(a) for a in arrows)
        for u, v in arrows:
            if u not in graph or v not in graph:
                raise ValueError(f"arrow ({u}, {v}) names a vertex not in the graph")
        return cls(graph.name, arrows, {a: Provenance(source) for a in arrows})


def _cross_check(target: WeightedGraph, arrows: Iterable[Pair], **kwargs) -> None:
    report = derive_constraints(target, **kwargs)
    bad = sorted(a for a in arrows if report.statuses[a].status == FORBIDDEN)
    if bad:
        raise TransferContradictionError(
            f"transferred arrows are forbidden on the target: {bad}"
        )


def transfer_subgraph(
    small: WeightedGraph,
    big: WeightedGraph,
    embedding: Mapping[str, str],
    known: KnownArrowSet,
    *,
    check: bool = True,
) -> KnownArrowSet:
    """Push arrows from ``small`` to a negative definite ``big`` containing it.

    ``embedding`` must be injective, keep genus and weight, and keep the
    number of edges between every pair of embedded vertices.
    """
    if sorted(embedding) != sorted(small.ids):
        raise NotAnEmbeddingError("not an embedding: map must be defined on every vertex of small")
    if len(set(embedding.values())) != len(embedding):
        raise NotAnEmbeddingError("not an embedding: map is not injective")
    for v in small.ids:
        w = embedding[v]
        if w not in big:
            raise NotAnEmbeddingError(f"not an embedding: {w!r} is not a vertex of big")
        if (small.genus(v), small.weight(v)) != (big.genus(w), big.weight(w)):
            raise NotAnEmbeddingError(f"not an embedding: {v!r} and {w!r} carry different weights")
    for u, v in itertools.combinations(small.ids, 2):
        if small.multiplicity(u, v) != big.multiplicity(embedding[u], embedding[v]):
            raise NotAnEmbeddingError(f"not an embedding: edges between {u!r} and {v!r} not preserved")
    if not is_negative_definite(big):
        raise NotNegativeDefiniteError("big not negative definite")
    arrows = frozenset((embedding[u], embedding[v]) for u, v in known.arrows)
    prov = {
        (embedding[u], embedding[v]): Provenance(
            "subgraph transfer", f"{u}->{v} on {small.name or 'small graph'}"
        )
        for u, v in known.arrows
    }
    if check and arrows:
        _cross_check(big, arrows)
    return KnownArrowSet(big.name, arrows, prov)


def transfer_weight_decrease(
    g1: WeightedGraph,
    g2: WeightedGraph,
    matching: Mapping[str, str],
    known: KnownArrowSet,
    *,
    check: bool = True,
) -> KnownArrowSet:
    """Pull arrows back from ``g2`` (weights lowered) to the negative definite ``g1``.

    ``matching`` sends ids of ``g1`` to ids of ``g2``. The auxiliary graph that
    contains ``g2`` and contracts onto ``g1`` is attached to each provenance.
    """
    _check_weight_decrease(g1, g2, matching)
    _require_negative_definite(g1)
    g3 = build_g3(g1, g2, matching)
    back = {w: v for v, w in matching.items()}
    arrows = frozenset((back[u], back[v]) for u, v in known.arrows)
    prov = {
        (back[u], back[v]): Provenance(
            "weight-decrease transfer", f"{u}->{v} on {g2.name or 'lowered graph'}", g3
        )
        for u, v in known.arrows
    }
    if check and arrows:
        _cross_check(g1, arrows)
    return KnownArrowSet(g1.name, arrows, prov)


# ----------------------------------------------------------------------
# extremality


@dataclass(frozen=True)
class VertexWitness:
    vertex: str
    raised_weight: int
    negative_definite: bool
    trivial_arrows_before: int
    trivial_arrows_after: int | None
    clause: str  # "not negative definite" | "trivial arrows increase" | "neither"


@dataclass(frozen=True)
class ExtremalityResult:
    extremal: bool
    witnesses: tuple[VertexWitness, ...]


def is_extremal(g: WeightedGraph, *, order_limit: int = ORDER_SEARCH_LIMIT) -> ExtremalityResult:
    """Raise each weight by one and compare definiteness and trivial-arrow counts."""
    if any(v.genus > 0 for v in g.vertices):
        raise PreconditionError("has positive genus vertex")
    if g.betti_number() > 0:
        raise PreconditionError("has loop")
    if not is_negative_definite(g):
        raise NotNegativeDefiniteError("not negative definite")
    base = len(trivial_arrows(g, order_limit))
    witnesses = []
    for v in g.vertices:
        raised = g.with_weight(v.id, v.weight + 1)
        if not is_negative_definite(raised):
            witnesses.append(
                VertexWitness(v.id, v.weight + 1, False, base, None, "not negative definite")
            )
            continue
        after = len(trivial_arrows(raised, order_limit))
        clause = "trivial arrows increase" if after > base else "neither"
        witnesses.append(VertexWitness(v.id, v.weight + 1, True, base, after, clause))
    return ExtremalityResult(all(w.clause != "neither" for w in witnesses), tuple(witnesses))


# ----------------------------------------------------------------------
# enumeration


def _closure(arrows: Iterable[Pair]) -> set[Pair]:
    closed = set(arrows)
    nodes = {x for a in closed for x in a}
    for k in nodes:
        for i in nodes:
            if (i, k) not in closed:
                continue
            for j in nodes:
                if i != j and (k, j) in closed:
                    closed.add((i, j))
    return closed


def is_consistent_digraph(report: ConstraintReport, arrows: Iterable[Pair]) -> bool:
    """Whether an arrow set can be the adjacency digraph given ``report``.

    Adjacency is closure inclusion and hence transitive: the transitive
    closure must avoid Forbidden pairs and, among essential vertices, contain
    no 2-cycle (which also excludes directed cycles).
    """
    closed = _closure(arrows)
    for pair in closed:
        st = report.statuses.get(pair)
        if st is not None and st.status == FORBIDDEN:
            return False
    ess = report.essential
    for u, v in closed:
        if u in ess and v in ess and (v, u) in closed:
            return False
    return True


def enumerate_consistent_digraphs(report: ConstraintReport, cap: int = 20) -> list[frozenset[Pair]]:
    """Every adjacency digraph allowed by ``report``: trivial arrows plus a subset of Possible pairs."""
    possible = report.pairs_with(POSSIBLE)
    if len(possible) > cap:
        raise TooManyPairsError(f"too many possible pairs: {len(possible)} > cap {cap}")
    base = frozenset(report.pairs_with(TRIVIAL))
    index = {v: i for i, v in enumerate(report.graph.ids)}
    out = []
    for k in range(len(possible) + 1):
        for extra in itertools.combinations(possible, k):
            arrows = base | frozenset(extra)
            if is_consistent_digraph(report, arrows):
                out.append(arrows)
    return sorted(
        out, key=lambda d: (len(d), sorted((index.get(u, -1), index.get(v, -1)) for u, v in d))
    )
