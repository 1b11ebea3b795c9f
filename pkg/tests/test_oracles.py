"""Cross-checks against code that shares nothing with the package's search
routines: the networkx graph atlas and graph6 writer, brute-force forest
enumeration for tree-depth, and bottom-up generation of SC(k) / BSC(k)."""

import itertools
import random

import networkx as nx
import pytest

from vminor.corpus import all_graphs, graphs_on
from vminor.depth import bsc_depth, sc_depth, tree_depth
from vminor.graph import (
    Graph,
    canonical_form,
    chromatic_number,
    from_graph6,
    is_isomorphic,
    to_graph6,
)


def from_nx(N) -> Graph:
    idx = {v: i for i, v in enumerate(N.nodes())}
    return Graph.from_edges(len(idx), [(idx[u], idx[v]) for u, v in N.edges()])


def to_nx(G: Graph):
    N = nx.Graph()
    N.add_nodes_from(range(G.n))
    N.add_edges_from(G.edges())
    return N


ATLAS = [from_nx(N) for N in nx.graph_atlas_g()[1:]]  # drop the empty graph


def test_corpus_counts_match_atlas():
    counts = [sum(1 for G in ATLAS if G.n == n) for n in range(1, 8)]
    assert counts == [1, 2, 4, 11, 34, 156, 1044]
    assert [len(graphs_on(n)) for n in range(1, 8)] == counts


def test_canonical_form_separates_atlas():
    forms = {canonical_form(G) for G in ATLAS}
    assert len(forms) == len(ATLAS)
    assert forms == {canonical_form(G) for G in all_graphs(7)}


def test_canonical_form_invariant_under_relabelling():
    rng = random.Random(3)
    for G in rng.sample(ATLAS, 200):
        perm = list(range(G.n))
        rng.shuffle(perm)
        H = Graph.from_edges(G.n, [(perm[u], perm[v]) for u, v in G.edges()])
        assert canonical_form(G) == canonical_form(H)


def test_isomorphism_agrees_with_networkx():
    rng = random.Random(5)
    same_n = {}
    for G in ATLAS:
        same_n.setdefault((G.n, G.num_edges()), []).append(G)
    for group in same_n.values():
        for G, H in itertools.islice(itertools.combinations(group, 2), 40):
            assert is_isomorphic(G, H) == nx.is_isomorphic(to_nx(G), to_nx(H))
        G = rng.choice(group)
        assert is_isomorphic(G, G.relabel_ids())


def test_graph6_matches_networkx():
    for G in ATLAS:
        ref = nx.to_graph6_bytes(to_nx(G), header=False).decode().strip()
        assert to_graph6(G) == ref
        assert nx.is_isomorphic(nx.from_graph6_bytes(ref.encode()), to_nx(from_graph6(ref)))
    big = nx.gnp_random_graph(80, 0.1, seed=2)
    assert to_graph6(from_nx(big)) == nx.to_graph6_bytes(big, header=False).decode().strip()


def test_chromatic_number_brute_force():
    for G in ATLAS:
        if G.n > 6:
            continue
        edges = G.edges()
        want = next(
            k
            for k in range(1, G.n + 1)
            if any(all(c[u] != c[v] for u, v in edges) for c in itertools.product(range(k), repeat=G.n))
        )
        assert chromatic_number(G) == want


def _td_by_forests(G: Graph) -> int:
    """Smallest height+1 over all rooted forests whose closure contains G."""
    n = G.n
    best = n
    for parent in itertools.product([None, *range(n)], repeat=n):
        depth = []
        ok = True
        anc = []
        for v in range(n):
            seen, p, a = {v}, parent[v], set()
            while p is not None and ok:
                if p in seen:
                    ok = False
                seen.add(p)
                a.add(p)
                p = parent[p]
            if not ok:
                break
            anc.append(a)
            depth.append(len(a))
        if not ok:
            continue
        if all(u in anc[v] or v in anc[u] for u, v in G.edges()):
            best = min(best, max(depth) + 1)
    return best


def test_tree_depth_brute_force():
    for G in all_graphs(5):
        assert tree_depth(G)[0] == _td_by_forests(G)


def _forward_classes(n_max: int, moves) -> dict[bytes, int]:
    """Least depth of every graph on <= n_max vertices, generated upwards:
    level k = disjoint unions of level k-1 graphs, then one move."""
    depth = {canonical_form(Graph([0])): 0}
    reps = {canonical_form(Graph([0])): Graph([0])}
    k = 0
    while len(depth) < sum(len(graphs_on(n)) for n in range(1, n_max + 1)):
        k += 1
        level = [reps[f] for f, d in depth.items() if d <= k - 1]
        found = {}
        for size in range(1, n_max + 1):
            for parts in itertools.combinations_with_replacement(range(len(level)), size):
                total = sum(level[p].n for p in parts)
                if total > n_max:
                    continue
                rows, off = [], 0
                for p in parts:
                    rows += [r << off for r in level[p].rows]
                    off += level[p].n
                for H in moves(Graph(rows, check=False)):
                    f = canonical_form(H)
                    if f not in depth and f not in found:
                        found[f] = H
        for f, H in found.items():
            depth[f] = k
            reps[f] = H
    return depth


def _sc_moves(G):
    for X in range(1 << G.n):
        rows = list(G.rows)
        for x in range(G.n):
            if X >> x & 1:
                rows[x] ^= X & ~(1 << x)
        yield Graph(rows, check=False)


def _bsc_moves(G):
    for assign in itertools.product(range(3), repeat=G.n):
        X = sum(1 << v for v in range(G.n) if assign[v] == 1)
        Y = sum(1 << v for v in range(G.n) if assign[v] == 2)
        rows = list(G.rows)
        for v in range(G.n):
            rows[v] ^= Y if assign[v] == 1 else X if assign[v] == 2 else 0
        yield Graph(rows, check=False)


@pytest.mark.parametrize("name, moves, fn", [("sc", _sc_moves, sc_depth), ("bsc", _bsc_moves, bsc_depth)])
def test_depth_matches_forward_generation(name, moves, fn):
    ref = _forward_classes(5, moves)
    for G in all_graphs(5):
        assert fn(G)[0] == ref[canonical_form(G)], (name, G)
