from __future__ import annotations

import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nashgraph.graph import Vertex, WeightedGraph

settings.register_profile(
    "repo", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@st.composite
def weighted_graphs(draw, max_vertices=6, min_weight=-5, max_weight=1, multi=True, genus=True):
    """Connected weighted graphs: random spanning tree plus a few extra edges."""
    n = draw(st.integers(1, max_vertices))
    ids = [f"x{i}" for i in range(n)]
    edges = [(ids[draw(st.integers(0, i - 1))], ids[i]) for i in range(1, n)]
    if n >= 2:
        for _ in range(draw(st.integers(0, 2))):
            a, b = draw(st.sampled_from([(p, q) for p in ids for q in ids if p < q]))
            if multi or all({a, b} != set(e) for e in edges):
                edges.append((a, b))
    verts = [
        Vertex(i, draw(st.integers(0, 1)) if genus else 0, draw(st.integers(min_weight, max_weight)))
        for i in ids
    ]
    return WeightedGraph(tuple(verts), tuple(edges))


def random_relabel(g: WeightedGraph, seed: int):
    """Random new ids and vertex order; returns (copy, old -> new bijection)."""
    rng = random.Random(seed)
    new_ids = [f"n{i}" for i in range(len(g))]
    rng.shuffle(new_ids)
    mapping = dict(zip(g.ids, new_ids))
    order = list(new_ids)
    rng.shuffle(order)
    edges = list(g.edges)
    rng.shuffle(edges)
    shuffled = g.replace(edges=tuple(edges))
    return shuffled.relabel(mapping, order=order), mapping


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
