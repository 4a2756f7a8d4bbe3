"""Named reference graphs and seeded random generators."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .errors import GraphError
from .graph import Vertex, WeightedGraph, is_negative_definite


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: WeightedGraph
    notes: str
    expected: Mapping[str, object] = field(default_factory=dict)
    flags: frozenset[str] = frozenset()


def _chain(name, weights, ids=None):
    return WeightedGraph.chain(*weights, ids=ids, name=name)


def _tree_with_branch(name: str, length: int, branch_at: int) -> WeightedGraph:
    ids = [f"v{i}" for i in range(1, length + 2)]
    verts = [Vertex(i, 0, -2) for i in ids]
    edges = [(ids[i], ids[i + 1]) for i in range(length - 1)]
    edges.append((ids[branch_at - 1], ids[-1]))
    return WeightedGraph(tuple(verts), tuple(edges), name)


def _build(name, vertices, edges):
    return WeightedGraph.build(vertices, edges, name)


def _entries() -> list[CorpusEntry]:
    out = []
    for n in range(1, 9):
        out.append(
            CorpusEntry(
                f"A{n}",
                _chain(f"A{n}", [-2] * n),
                f"rational double point A{n}: chain of {n} (-2)-curves",
                {"negative_definite": True, "automorphisms": 1 if n == 1 else 2, "essential": n},
            )
        )
    out.append(
        CorpusEntry(
            "D4",
            _build("D4", [("c", 0, -2), ("l1", 0, -2), ("l2", 0, -2), ("l3", 0, -2)],
                   [("c", "l1"), ("c", "l2"), ("c", "l3")]),
            "rational double point D4; the three legs are permuted freely",
            {"negative_definite": True, "automorphisms": 6, "essential": 4},
        )
    )
    # E_n: chain of n-1 vertices, extra vertex on the third one
    for n, autos in ((6, 2), (7, 1), (8, 1)):
        out.append(
            CorpusEntry(
                f"E{n}",
                _tree_with_branch(f"E{n}", n - 1, 3),
                f"rational double point E{n}",
                {"negative_definite": True, "automorphisms": autos, "essential": n},
            )
        )
    for weights, autos in (
        ((-3, -2), 1),
        ((-5,), 1),
        ((-3, -3), 2),
        ((-2, -4, -2), 2),
        ((-3, -2, -4), 1),
        ((-4, -2, -2, -4), 2),
        ((-2, -3, -2, -5, -2), 1),
    ):
        name = "cq" + "".join(str(w) for w in weights)
        out.append(
            CorpusEntry(
                name,
                _chain(name, weights),
                "cyclic quotient singularity: chain with weights at most -2",
                {"negative_definite": True, "automorphisms": autos, "essential": len(weights)},
                frozenset({"cyclic-quotient"}),
            )
        )
    out += [
        CorpusEntry(
            "nonmin-313",
            _chain("nonmin-313", [-3, -1, -3], ids=["l", "m", "r"]),
            "blow-up of the A2 point at the intersection of its two curves",
            {"negative_definite": True, "automorphisms": 2, "essential": 2},
            frozenset({"non-minimal"}),
        ),
        CorpusEntry(
            "nonmin-21",
            _chain("nonmin-21", [-2, -1], ids=["u", "v"]),
            "two blow-ups of a smooth point",
            {"negative_definite": True, "automorphisms": 1, "essential": 0},
            frozenset({"non-minimal"}),
        ),
        CorpusEntry(
            "nonmin-31",
            _chain("nonmin-31", [-3, -1], ids=["u", "v"]),
            "blow-up of a free point on a (-2)-curve",
            {"negative_definite": True, "automorphisms": 1, "essential": 1},
            frozenset({"non-minimal"}),
        ),
        CorpusEntry(
            "genus1-star",
            _build("genus1-star", [("c", 1, -2), ("l1", 0, -2), ("l2", 0, -2)],
                   [("c", "l1"), ("c", "l2")]),
            "elliptic central curve with two rational legs",
            {"negative_definite": True, "automorphisms": 2, "essential": 3},
            frozenset({"genus"}),
        ),
        CorpusEntry(
            "genus1-chain",
            _build("genus1-chain", [("e", 1, -3), ("r1", 0, -2), ("r2", 0, -2)],
                   [("e", "r1"), ("r1", "r2")]),
            "elliptic end curve followed by two rational curves",
            {"negative_definite": True, "automorphisms": 1, "essential": 3},
            frozenset({"genus"}),
        ),
        CorpusEntry(
            "genus2-single",
            _build("genus2-single", [("c", 2, -1)], []),
            "cone over a genus-2 curve of degree 1; not contractible despite weight -1",
            {"negative_definite": True, "automorphisms": 1, "essential": 1},
            frozenset({"genus"}),
        ),
        CorpusEntry(
            "double-edge",
            _build("double-edge", [("a", 0, -3), ("b", 0, -3)], [("a", "b"), ("a", "b")]),
            "two rational curves meeting in two points",
            {"negative_definite": True, "automorphisms": 2, "essential": 2},
            frozenset({"multi-edge"}),
        ),
        CorpusEntry(
            "triple-edge",
            _build("triple-edge", [("a", 0, -4), ("b", 0, -4)], [("a", "b")] * 3),
            "two rational curves meeting in three points",
            {"negative_definite": True, "automorphisms": 2, "essential": 2},
            frozenset({"multi-edge"}),
        ),
        CorpusEntry(
            "star-3x3",
            _build("star-3x3", [("c", 0, -2), ("l1", 0, -3), ("l2", 0, -3), ("l3", 0, -3)],
                   [("c", "l1"), ("c", "l2"), ("c", "l3")]),
            "star with three identical (-3)-legs",
            {"negative_definite": True, "automorphisms": 6, "essential": 4},
        ),
        CorpusEntry(
            "nonrep-1-444",
            _build("nonrep-1-444", [("c", 0, -1), ("l1", 0, -4), ("l2", 0, -4), ("l3", 0, -4)],
                   [("c", "l1"), ("c", "l2"), ("c", "l3")]),
            "(-1)-curve meeting three others; contracting it leaves normal crossings",
            {"negative_definite": True, "automorphisms": 6, "essential": None},
            frozenset({"non-representable"}),
        ),
        CorpusEntry(
            "triangle",
            _build("triangle", [("a", 0, -2), ("b", 0, -2), ("c", 0, -2)],
                   [("a", "b"), ("b", "c"), ("c", "a")]),
            "cycle of three (-2)-curves; not negative definite, used for covering tests",
            {"negative_definite": False, "automorphisms": 6, "simple_loops": 1},
            frozenset({"non-definite", "loop"}),
        ),
        CorpusEntry(
            "triangle-3",
            _build("triangle-3", [("a", 0, -3), ("b", 0, -3), ("c", 0, -3)],
                   [("a", "b"), ("b", "c"), ("c", "a")]),
            "cycle of three (-3)-curves",
            {"negative_definite": True, "automorphisms": 6, "essential": 3, "simple_loops": 1},
            frozenset({"loop"}),
        ),
        CorpusEntry(
            "hexagon-3",
            _build("hexagon-3", [(f"h{i}", 0, -3) for i in range(6)],
                   [(f"h{i}", f"h{(i + 1) % 6}") for i in range(6)]),
            "cycle of six (-3)-curves",
            {"negative_definite": True, "automorphisms": 12, "essential": 6, "simple_loops": 1},
            frozenset({"loop"}),
        ),
        CorpusEntry(
            "bowtie",
            _build(
                "bowtie",
                [("c", 0, -5), ("a1", 0, -3), ("a2", 0, -3), ("b1", 0, -3), ("b2", 0, -3)],
                [("c", "a1"), ("a1", "a2"), ("a2", "c"), ("c", "b1"), ("b1", "b2"), ("b2", "c")],
            ),
            "two triangles sharing a vertex: two independent loops",
            {"negative_definite": True, "automorphisms": 8, "essential": 5, "simple_loops": 2},
            frozenset({"loop"}),
        ),
        CorpusEntry(
            "theta",
            _build(
                "theta",
                [("x", 0, -4), ("y", 0, -4), ("p", 0, -3), ("q", 0, -3), ("r", 0, -3)],
                [("x", "p"), ("p", "y"), ("x", "q"), ("q", "y"), ("x", "r"), ("r", "y")],
            ),
            "three paths of length two between two vertices",
            {"negative_definite": True, "automorphisms": 12, "essential": 5, "simple_loops": 3},
            frozenset({"loop"}),
        ),
    ]
    return out


CORPUS: dict[str, CorpusEntry] = {e.name: e for e in _entries()}


def names() -> list[str]:
    return list(CORPUS)


def get(name: str) -> CorpusEntry:
    try:
        return CORPUS[name]
    except KeyError:
        raise GraphError(f"unknown corpus entry: {name!r}") from None


def random_negative_definite(seed: int, max_vertices: int, *, genus_rate: float = 0.0) -> WeightedGraph:
    """Seeded random tree or sparse graph with weights at most -2, checked negative definite.

    Candidates failing the definiteness check are redrawn; after 100 failures
    a chain of (-2)-curves is returned.
    """
    if max_vertices < 1:
        raise ValueError("max_vertices must be at least 1")
    rng = random.Random(seed)
    n = rng.randint(1, max_vertices)
    ids = [f"v{i}" for i in range(n)]
    for _ in range(100):
        edges = [(ids[rng.randrange(i)], ids[i]) for i in range(1, n)]
        if n >= 3 and rng.random() < 0.3:
            a, b = rng.sample(ids, 2)
            edges.append((a, b))
        verts = [
            Vertex(i, 1 if rng.random() < genus_rate else 0, rng.randint(-5, -2)) for i in ids
        ]
        g = WeightedGraph(tuple(verts), tuple(edges), f"random-{seed}")
        if is_negative_definite(g):
            return g
    return WeightedGraph.chain(*([-2] * n), ids=ids, name=f"random-{seed}")


def random_looped_graph(seed: int, max_vertices: int, loops: int) -> WeightedGraph:
    """Seeded random simple connected graph with first Betti number ``loops``.

    Weights are one below minus the valence, so the matrix is strictly
    diagonally dominant and hence negative definite.
    """
    rng = random.Random(seed)
    n = rng.randint(max(3, loops + 3), max(max_vertices, loops + 3))
    ids = [f"v{i}" for i in range(n)]
    edges = [(ids[rng.randrange(i)], ids[i]) for i in range(1, n)]
    present = {frozenset(e) for e in edges}
    candidates = [
        (a, b) for i, a in enumerate(ids) for b in ids[i + 1 :] if frozenset((a, b)) not in present
    ]
    edges += rng.sample(candidates, loops)
    valence = {i: 0 for i in ids}
    for a, b in edges:
        valence[a] += 1
        valence[b] += 1
    verts = [Vertex(i, 0, -valence[i] - 1) for i in ids]
    return WeightedGraph(tuple(verts), tuple(edges), f"looped-{seed}")
