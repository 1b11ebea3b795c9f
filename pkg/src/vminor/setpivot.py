"""Writing a principal pivot A(G)*X as a sequence of edge pivots."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, VMError
from .gf2 import adjacency_matrix, is_nonsingular, principal_pivot
from .graph import Graph, as_mask, bits, pivot_edge, popcount


@dataclass(frozen=True)
class PivotPairing:
    """Edge pivots ``pairs[0], pairs[1], ...`` (vertex indices, applied in
    order, each an edge of the graph at the time it is pivoted) whose
    composition equals the set pivot; ``s`` lies in the last pair."""

    pairs: tuple[tuple[int, int], ...]
    s: int


def find_pivotable_pair(G: Graph, X, u: int) -> tuple[int, int]:
    """Lexicographically smallest edge vw with v, w in X - {u}.

    Such an edge exists whenever A(G)[X] is non-singular and |X| >= 3: if
    X - {u} were independent, G[X] would be a star centred at u, which is
    singular."""
    X = as_mask(G, X)
    if not (X >> u) & 1:
        raise PreconditionError(f"{u} is not in X")
    if popcount(X) < 3:
        raise PreconditionError("find_pivotable_pair needs |X| >= 3")
    if not is_nonsingular(adjacency_matrix(G), X):
        raise PreconditionError("A(G)[X] is singular")
    rest = X & ~(1 << u)
    for v in bits(rest):
        nb = G.rows[v] & rest & ~((1 << (v + 1)) - 1)
        if nb:
            return v, (nb & -nb).bit_length() - 1
    raise VMError("internal inconsistency: non-singular A(G)[X] without an edge avoiding u")


def decompose_set_pivot(G: Graph, X, s: int | None = None, check: bool = True) -> PivotPairing:
    """Pairs {x_i, y_i} partitioning X such that pivoting them in turn gives
    A(G)*X, with ``s`` (default: smallest vertex of X) in the last pair.

    Each step pivots an edge of X - {s} in the current graph and recurses
    on the rest of X, which stays non-singular in the pivoted graph."""
    X = as_mask(G, X)
    if X == 0:
        raise PreconditionError("X must be non-empty")
    if popcount(X) % 2:
        raise PreconditionError("A(G)[X] is singular: |X| is odd")
    if not is_nonsingular(adjacency_matrix(G), X):
        raise PreconditionError("A(G)[X] is singular")
    if s is None:
        s = (X & -X).bit_length() - 1
    if not (X >> s) & 1:
        raise PreconditionError(f"s={s} is not in X")
    pairs = []
    cur, left = G, X
    while popcount(left) > 2:
        v, w = find_pivotable_pair(cur, left, s)
        pairs.append((v, w))
        cur = pivot_edge(cur, v, w)
        left &= ~((1 << v) | (1 << w))
    x, y = bits(left)
    if not cur.has_edge(x, y):
        raise VMError("internal inconsistency: final pair is not an edge")
    pairs.append((x, y))
    cur = pivot_edge(cur, x, y)
    if check:
        covered = 0
        for a, b in pairs:
            if covered & ((1 << a) | (1 << b)):
                raise VMError("pairs overlap")
            covered |= (1 << a) | (1 << b)
        if covered != X or s not in pairs[-1]:
            raise VMError("pairing postcondition violated")
        if cur.rows != principal_pivot(adjacency_matrix(G), X).rows:
            raise VMError("composed edge pivots do not reproduce A(G)*X")
    return PivotPairing(tuple(pairs), s)
