"""Square matrices over GF(2) and the principal pivot transform.

Rows are packed into ints (bit ``j`` of ``rows[i]`` is entry ``(i, j)``), so
row operations are single XORs.
"""

from __future__ import annotations

import random
from typing import Sequence

from .errors import CapacityError, PreconditionError
from .graph import Graph, _gather, all_subsets, as_mask, bits, induced_subgraph, mask_of, popcount


class GF2Matrix:
    """Immutable n×n 0/1 matrix; ``index_labels[k]`` names row/column k."""

    __slots__ = ("rows", "index_labels")

    def __init__(self, rows: Sequence[int], index_labels: Sequence | None = None):
        rows = tuple(rows)
        n = len(rows)
        if any(r < 0 or r >> n for r in rows):
            raise PreconditionError("matrix entry outside n columns")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "index_labels", tuple(range(n)) if index_labels is None else tuple(index_labels))

    def __setattr__(self, name, value):
        raise AttributeError("GF2Matrix is immutable")

    def __reduce__(self):
        return GF2Matrix, (self.rows, self.index_labels)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], index_labels=None) -> "GF2Matrix":
        return cls([mask_of(j for j, e in enumerate(row) if e & 1) for row in entries], index_labels)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, GF2Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def tolist(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def __str__(self) -> str:
        return "\n".join("".join(str(e) for e in row) for row in self.tolist())

    def __repr__(self) -> str:
        return f"GF2Matrix({self.tolist()})"

    def is_symmetric(self) -> bool:
        return all(((self.rows[j] >> i) & 1) == ((r >> j) & 1) for i, r in enumerate(self.rows) for j in range(self.n))

    def has_zero_diagonal(self) -> bool:
        return not any((r >> i) & 1 for i, r in enumerate(self.rows))

    def submatrix(self, S) -> "GF2Matrix":
        """Principal submatrix M[S]."""
        idx = list(bits(_mask(self, S)))
        return GF2Matrix([_gather(self.rows[i], idx) for i in idx], [self.index_labels[i] for i in idx])


def _mask(M: GF2Matrix, S) -> int:
    m = S if isinstance(S, int) else mask_of(S)
    if m < 0 or m & ~M.full_mask:
        raise PreconditionError(f"index set {S!r} outside matrix of size {M.n}")
    return m


def adjacency_matrix(G: Graph) -> GF2Matrix:
    return GF2Matrix(G.rows, G.ids)


def graph_of(M: GF2Matrix, template: Graph | None = None) -> Graph:
    """The graph with adjacency matrix M (must be symmetric, zero diagonal)."""
    if not (M.is_symmetric() and M.has_zero_diagonal()):
        raise PreconditionError("matrix is not the adjacency matrix of a simple graph")
    if template is not None:
        return template._replace(M.rows)
    return Graph(M.rows, check=False)


def rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of the given bit rows."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def _principal_rows(M: GF2Matrix, S: int) -> list[int]:
    return [M.rows[i] & S for i in bits(S)]


def is_nonsingular(M: GF2Matrix, S=None) -> bool:
    """True iff M[S] has full rank; the empty submatrix counts as non-singular."""
    S = M.full_mask if S is None else _mask(M, S)
    return rank(_principal_rows(M, S)) == popcount(S)


def _invert_principal(M: GF2Matrix, S: int) -> dict[int, int] | None:
    """Gauss-Jordan inverse of M[S].  Row ``i`` of the result is a mask over
    S; None if singular."""
    idx = list(bits(S))
    work = [[M.rows[i] & S, 1 << i] for i in idx]
    for p, col in enumerate(idx):
        piv = next((k for k in range(p, len(work)) if (work[k][0] >> col) & 1), None)
        if piv is None:
            return None
        work[p], work[piv] = work[piv], work[p]
        left, right = work[p]
        for k in range(len(work)):
            if k != p and (work[k][0] >> col) & 1:
                work[k][0] ^= left
                work[k][1] ^= right
    return {col: work[p][1] for p, col in enumerate(idx)}


def principal_pivot(M: GF2Matrix, S) -> GF2Matrix:
    """M*S.  With A=M[S], B=M[S,T], C=M[T,S], D=M[T] (T the complement):
    blocks A^-1, A^-1 B, C A^-1, D + C A^-1 B (signs vanish over GF(2))."""
    S = _mask(M, S)
    if S == 0:
        return M
    inv = _invert_principal(M, S)
    if inv is None:
        raise PreconditionError(f"principal submatrix on {sorted(bits(S))} is singular")
    T = M.full_mask & ~S
    rows = M.rows
    new = [0] * M.n
    for i in bits(S):
        r = inv[i]
        for j in bits(inv[i]):
            r ^= rows[j] & T
        new[i] = r
    for i in bits(T):
        ca = 0
        for j in bits(rows[i] & S):
            ca ^= inv[j]
        r = (rows[i] & T) | ca
        for j in bits(ca):
            r ^= rows[j] & T
        new[i] = r
    return GF2Matrix(new, M.index_labels)


def check_tucker(M: GF2Matrix, S, limit: int = 12) -> bool:
    """(M*S)[T] non-singular  <=>  M[S Δ T] non-singular, for every T."""
    if M.n > limit:
        raise CapacityError(f"check_tucker limited to n <= {limit}, got {M.n}")
    S = _mask(M, S)
    P = principal_pivot(M, S)
    return all(is_nonsingular(P, T) == is_nonsingular(M, S ^ T) for T in all_subsets(M.full_mask))


def check_pivot_composition(M: GF2Matrix, S, T) -> bool:
    """(M*S)*T == M*(S Δ T).  Raises if either precondition fails."""
    S, T = _mask(M, S), _mask(M, T)
    if not is_nonsingular(M, S):
        raise PreconditionError("M[S] is singular")
    P = principal_pivot(M, S)
    if not is_nonsingular(P, T):
        raise PreconditionError("(M*S)[T] is singular")
    return principal_pivot(P, T) == principal_pivot(M, S ^ T)


def pivot_minor_by_matrix(G: Graph, X, Y) -> Graph:
    """The graph on Y with adjacency (A(G)*X)[Y]; ids/labels of Y are kept."""
    X, Y = as_mask(G, X), as_mask(G, Y)
    P = principal_pivot(adjacency_matrix(G), X)
    return induced_subgraph(graph_of(P, G), Y)


def random_symmetric(n: int, rng: random.Random, p: float = 0.5, zero_diagonal: bool = True) -> GF2Matrix:
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        if not zero_diagonal and rng.random() < p:
            rows[i] |= 1 << i
    return GF2Matrix(rows)


def random_matrix(n: int, rng: random.Random, p: float = 0.5) -> GF2Matrix:
    return GF2Matrix([mask_of(j for j in range(n) if rng.random() < p) for _ in range(n)])
