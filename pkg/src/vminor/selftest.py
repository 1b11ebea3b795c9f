"""A quick internal battery behind ``vm selftest``.

Seeded and exhaustive over small corpora, so a run takes a few seconds and
always checks the same cases."""

from __future__ import annotations

import random
import sys
import time

from . import constructions as C
from . import depth as D
from .corpus import all_graphs
from .gf2 import adjacency_matrix, check_pivot_composition, check_tucker, is_nonsingular, principal_pivot, random_symmetric
from .graph import (
    Graph,
    all_subsets,
    is_bipartite,
    complement_between,
    complement_on,
    from_graph6,
    is_p4_free,
    local_complement,
    pivot_edge,
    to_graph6,
)
from .minors import MinorCertificate, is_pivot_minor, is_vertex_minor, verify_certificate


def _involutions():
    rng = random.Random(1)
    for G in all_graphs(5):
        for v in range(G.n):
            assert local_complement(local_complement(G, v), v) == G
        for u, v in G.edges():
            P = pivot_edge(G, u, v)
            assert pivot_edge(P, u, v) == G
            assert P.rows == principal_pivot(adjacency_matrix(G), (1 << u) | (1 << v)).rows
        X = rng.getrandbits(G.n) if G.n else 0
        Y = rng.getrandbits(G.n) & ~X if G.n else 0
        assert complement_on(complement_on(G, X), X) == G
        assert complement_between(complement_between(G, X, Y), X, Y) == G


def _graph6():
    for G in all_graphs(6):
        assert from_graph6(to_graph6(G)).rows == G.rows


def _tucker():
    for G in all_graphs(4):
        M = adjacency_matrix(G)
        for S in all_subsets(G.full_mask):
            if is_nonsingular(M, S):
                assert check_tucker(M, S)


def _composition():
    rng = random.Random(2)
    done = 0
    while done < 100:
        M = random_symmetric(rng.randint(1, 7), rng)
        S, T = rng.getrandbits(M.n), rng.getrandbits(M.n)
        if is_nonsingular(M, S) and is_nonsingular(principal_pivot(M, S), T):
            assert check_pivot_composition(M, S, T)
            done += 1


def _set_pivots():
    rng = random.Random(3)
    done = 0
    while done < 100:
        G = Graph(random_symmetric(rng.randint(2, 9), rng).rows)
        X = rng.getrandbits(G.n)
        if X and bin(X).count("1") % 2 == 0 and is_nonsingular(adjacency_matrix(G), X):
            C.decompose_set_pivot(G, X)  # checks its own postconditions
            done += 1


def _minors():
    from .graph import complete_graph, cycle_graph, path_graph

    c = is_vertex_minor(cycle_graph(5), complete_graph(3))
    verify_certificate(MinorCertificate.from_json(c.to_json()))
    assert is_pivot_minor(path_graph(4), complete_graph(3)) is None


def _hosts():
    for G in all_graphs(5):
        _, dec = D.sc_depth(G)
        C.sc_to_vertex_minor_host(dec).to_certificate()
        if is_bipartite(G) is not None:
            _, dec = D.bsc_depth(G)
            C.bsc_to_pivot_minor_host(dec).to_certificate()


def _hn():
    for n in range(2, 9):
        assert is_p4_free(C.make_hn(n))
        cert = C.hn_path_certificate(n)
        assert cert.target.num_edges() == n


CHECKS = [
    ("involutions on graphs <= 5", _involutions),
    ("graph6 round-trip on graphs <= 6", _graph6),
    ("Tucker equivalence on graphs <= 4", _tucker),
    ("pivot composition, 100 random", _composition),
    ("set pivot to edge pivots, 100 random", _set_pivots),
    ("minor certificates", _minors),
    ("SC/BSC hosts on graphs <= 5", _hosts),
    ("H_n paths, n <= 8", _hn),
]


def run_selftest(out=sys.stderr) -> int:
    failures = 0
    for name, fn in CHECKS:
        t = time.perf_counter()
        try:
            fn()
            status = "ok"
        except Exception as exc:  # report and carry on
            failures += 1
            status = f"FAIL ({type(exc).__name__}: {exc})"
        print(f"{name}: {status} [{time.perf_counter() - t:.1f}s]", file=out)
    return failures
