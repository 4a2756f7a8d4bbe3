"""Independent reference implementations used only by the tests.

Nothing here shares code paths with the library: determinants by cofactor
expansion, symmetries by trying every permutation, cycles via networkx,
loops by enumerating closed walks.
"""

from __future__ import annotations

import itertools

import networkx as nx


def cofactor_det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def matrix_of(g):
    ids = [v.id for v in g.vertices]
    pos = {v: i for i, v in enumerate(ids)}
    m = [[0] * len(ids) for _ in ids]
    for v in g.vertices:
        m[pos[v.id]][pos[v.id]] = v.weight
    for a, b in g.edges:
        m[pos[a]][pos[b]] += 1
        m[pos[b]][pos[a]] += 1
    return m


def oracle_leading_minors(g):
    m = matrix_of(g)
    return [cofactor_det([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def oracle_negative_definite(g):
    return all((d > 0) - (d < 0) == (-1) ** k for k, d in enumerate(oracle_leading_minors(g), 1))


def _edge_count(g, u, v):
    return sum(1 for a, b in g.edges if {a, b} == {u, v})


def _preserves(g1, g2, phi):
    for v in g1.vertices:
        w = g2.vertex(phi[v.id])
        if (v.genus, v.weight) != (w.genus, w.weight):
            return False
    ids = [v.id for v in g1.vertices]
    return all(
        _edge_count(g1, a, b) == _edge_count(g2, phi[a], phi[b])
        for a, b in itertools.combinations(ids, 2)
    )


def brute_isomorphisms(g1, g2):
    ids1 = [v.id for v in g1.vertices]
    ids2 = [v.id for v in g2.vertices]
    if len(ids1) != len(ids2):
        return []
    out = []
    for perm in itertools.permutations(ids2):
        phi = dict(zip(ids1, perm))
        if _preserves(g1, g2, phi):
            out.append(phi)
    return out


def brute_automorphisms(g):
    return brute_isomorphisms(g, g)


def nx_cycle_vertex_sets(g):
    G = nx.Graph()
    G.add_nodes_from(v.id for v in g.vertices)
    G.add_edges_from(g.edges)
    return sorted(sorted(c) for c in nx.simple_cycles(G))


def closed_walks(g, max_len):
    """All closed edge walks of length <= max_len, as (vertices, edges) tuples."""
    adj = {v.id: [] for v in g.vertices}
    for i, (a, b) in enumerate(g.edges):
        adj[a].append((i, b))
        adj[b].append((i, a))
    out = []

    def walk(start, verts, edges):
        if edges and verts[-1] == start and len(edges) <= max_len:
            out.append((tuple(verts[:-1]), tuple(edges)))
        if len(edges) == max_len:
            return
        for e, y in adj[verts[-1]]:
            walk(start, verts + [y], edges + [e])

    for v in adj:
        walk(v, [v], [])
    return out


def free_reduces_to_empty(edge_word):
    """Cyclic free reduction of an edge word, written independently."""
    word = list(edge_word)
    changed = True
    while changed and word:
        changed = False
        for i in range(len(word)):
            j = (i + 1) % len(word)
            if len(word) >= 2 and word[i] == word[j] and i != j:
                for k in sorted({i, j}, reverse=True):
                    del word[k]
                changed = True
                break
    return not word
