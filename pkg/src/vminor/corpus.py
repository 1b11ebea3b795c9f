"""Non-isomorphic small graphs, generated by one-vertex extension."""

from __future__ import annotations

from functools import lru_cache

from .graph import Graph, canonical_form, canonical_graph, is_connected


@lru_cache(maxsize=None)
def _graphs(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph([]),)
    if n == 1:
        return (Graph([0]),)
    out: dict[bytes, Graph] = {}
    for G in _graphs(n - 1):
        for nb in range(1 << (n - 1)):
            rows = [r | (((nb >> i) & 1) << (n - 1)) for i, r in enumerate(G.rows)] + [nb]
            H = Graph(rows, check=False)
            key = canonical_form(H)
            if key not in out:
                out[key] = canonical_graph(H)
    return tuple(out[k] for k in sorted(out))


def graphs_on(n: int) -> list[Graph]:
    """One representative of every isomorphism class on exactly n vertices."""
    if n > 9:
        raise ValueError("graph generation is only meant for n <= 9")
    return list(_graphs(n))


def all_graphs(n_max: int, n_min: int = 1) -> list[Graph]:
    return [G for n in range(n_min, n_max + 1) for G in graphs_on(n)]


def connected_graphs(n_max: int, n_min: int = 1) -> list[Graph]:
    return [G for G in all_graphs(n_max, n_min) if is_connected(G)]
