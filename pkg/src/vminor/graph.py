"""Simple undirected graphs on packed bit rows.

Vertices are dense indices ``0..n-1``.  Each graph also carries a tuple of
stable *ids* (original vertex names, preserved through deletions) and an
optional tuple of text labels.  Row ``i`` is an int whose bit ``j`` is set iff
``ij`` is an edge.  Every operation returns a new graph.
"""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CapacityError, GraphFormatError, PreconditionError

CANONICAL_LIMIT = 12


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(mask: int):
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


class Graph:
    """Immutable simple graph.

    ``rows[i]`` is the neighbourhood bitmask of vertex ``i``; ``ids[i]`` its
    stable original id; ``labels[i]`` an optional display name.
    """

    __slots__ = ("rows", "ids", "labels", "_index")

    def __init__(
        self,
        rows: Sequence[int],
        ids: Sequence[int] | None = None,
        labels: Sequence[str] | None = None,
        check: bool = True,
    ):
        rows = tuple(rows)
        n = len(rows)
        ids = tuple(range(n)) if ids is None else tuple(ids)
        labels = None if labels is None else tuple(labels)
        if check:
            full = (1 << n) - 1
            for i, r in enumerate(rows):
                if r & ~full:
                    raise PreconditionError(f"row {i} refers to a vertex >= {n}")
                if (r >> i) & 1:
                    raise PreconditionError(f"loop at vertex {i}")
                for j in bits(r):
                    if not (rows[j] >> i) & 1:
                        raise PreconditionError(f"adjacency not symmetric at ({i},{j})")
            if len(ids) != n or len(set(ids)) != n:
                raise PreconditionError("ids must be n distinct values")
            if labels is not None and (len(labels) != n or len(set(labels)) != n):
                raise PreconditionError("labels must be n distinct strings")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ids", ids)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return Graph, (self.rows, self.ids, self.labels, False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], **kw) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(rows, **kw)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.rows == other.rows and self.ids == other.ids and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.rows, self.ids, self.labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    def _replace(self, rows=None, ids=None, labels=...) -> "Graph":
        return Graph(
            self.rows if rows is None else rows,
            self.ids if ids is None else ids,
            self.labels if labels is ... else labels,
            check=False,
        )

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in bits(r >> (i + 1) << (i + 1))]

    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    def index_of(self, vid: int) -> int:
        """Dense index of the vertex with original id ``vid``."""
        if self._index is None:
            object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.ids)})
        try:
            return self._index[vid]
        except KeyError:
            raise PreconditionError(f"unknown vertex id {vid}") from None

    def name(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(self.ids[i])

    def relabel_ids(self, ids: Sequence[int] | None = None) -> "Graph":
        """Same adjacency, ids reset (default ``0..n-1``)."""
        return Graph(self.rows, ids, self.labels)

    def matrix(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]


def as_mask(G: Graph, S) -> int:
    """Normalise a vertex set given as bitmask or iterable of indices."""
    m = S if isinstance(S, int) else mask_of(S)
    if m < 0 or m & ~G.full_mask:
        raise PreconditionError(f"vertex set {S!r} not contained in V(G)")
    return m


def _check_vertex(G: Graph, v: int) -> None:
    if not 0 <= v < G.n:
        raise PreconditionError(f"vertex {v} not in graph on {G.n} vertices")


# --- small families -------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph([0] * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph([full ^ (1 << i) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(m: int, n: int) -> Graph:
    return Graph.from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)])


# --- rewriting --------------------------------------------------------------


def local_complement(G: Graph, v: int) -> Graph:
    """G*v: complement the adjacency inside the neighbourhood of ``v``."""
    _check_vertex(G, v)
    nb = G.rows[v]
    rows = list(G.rows)
    for u in bits(nb):
        rows[u] ^= nb & ~(1 << u)
    return G._replace(rows)


def pivot_edge(G: Graph, u: int, v: int) -> Graph:
    """G∧uv = G*u*v*u, defined only when uv is an edge."""
    _check_vertex(G, u)
    _check_vertex(G, v)
    if not G.has_edge(u, v):
        raise PreconditionError(f"cannot pivot non-edge ({u},{v})")
    return local_complement(local_complement(local_complement(G, u), v), u)


def complement_on(G: Graph, X) -> Graph:
    """Complement every pair inside X; pairs with an endpoint outside X stay."""
    X = as_mask(G, X)
    rows = list(G.rows)
    for x in bits(X):
        rows[x] ^= X & ~(1 << x)
    return G._replace(rows)


def complement_between(G: Graph, X, Y) -> Graph:
    """Toggle every pair xy with x in X, y in Y (X, Y disjoint)."""
    X = as_mask(G, X)
    Y = as_mask(G, Y)
    if X & Y:
        raise PreconditionError("complement_between needs disjoint sets")
    rows = list(G.rows)
    for x in bits(X):
        rows[x] ^= Y
    for y in bits(Y):
        rows[y] ^= X
    return G._replace(rows)


def complement(G: Graph) -> Graph:
    return complement_on(G, G.full_mask)


def _gather(row: int, idx: Sequence[int]) -> int:
    out = 0
    for k, i in enumerate(idx):
        if (row >> i) & 1:
            out |= 1 << k
    return out


def induced_subgraph(G: Graph, S) -> Graph:
    """G[S], re-indexed densely; ids and labels of survivors are kept."""
    idx = list(bits(as_mask(G, S)))
    rows = [_gather(G.rows[i], idx) for i in idx]
    labels = None if G.labels is None else [G.labels[i] for i in idx]
    return Graph(rows, [G.ids[i] for i in idx], labels, check=False)


def delete_vertices(G: Graph, S) -> Graph:
    return induced_subgraph(G, G.full_mask & ~as_mask(G, S))


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    """Block-diagonal union.  Part ``k`` occupies a contiguous index block
    (see :func:`union_provenance`); ids are reset to ``0..N-1``.  Labels are
    kept when every part has them and they stay distinct."""
    if not parts:
        raise PreconditionError("disjoint_union needs at least one part")
    rows: list[int] = []
    labels: list[str] | None = []
    for P in parts:
        off = len(rows)
        rows.extend(r << off for r in P.rows)
        if labels is not None and P.labels is not None:
            labels.extend(P.labels)
        else:
            labels = None
    if labels is not None and len(set(labels)) != len(labels):
        labels = None
    return Graph(rows, None, labels, check=False)


def union_provenance(parts: Sequence[Graph]) -> list[tuple[int, int]]:
    """``(part, index-in-part)`` for every vertex of ``disjoint_union(parts)``."""
    return [(k, i) for k, P in enumerate(parts) for i in range(P.n)]


# --- structure --------------------------------------------------------------


def components(G: Graph, mask: int | None = None) -> list[int]:
    """Connected components of G[mask] as bitmasks, ordered by lowest vertex."""
    rows = G.rows
    left = G.full_mask if mask is None else mask
    out = []
    while left:
        comp = frontier = left & -left
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= rows[v]
            frontier = nxt & left & ~comp
            comp |= frontier
        out.append(comp)
        left &= ~comp
    return out


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(components(G)) == 1


def is_bipartite(G: Graph) -> tuple[int, int] | None:
    """A bipartition ``(A, B)`` as masks, or None."""
    side = [-1] * G.n
    for s in range(G.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in bits(G.rows[v]):
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return None
    A = mask_of(i for i in range(G.n) if side[i] == 0)
    return A, G.full_mask & ~A


def max_clique_size(G: Graph) -> int:
    best = 0

    def grow(size: int, cand: int):
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + popcount(cand) <= best:
            return
        while cand:
            if size + popcount(cand) <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            grow(size + 1, cand & G.rows[v])

    grow(0, G.full_mask)
    return best


def chromatic_number(G: Graph, limit: int = 16) -> int:
    """Exact chromatic number by backtracking over increasing colour counts."""
    n = G.n
    if n > limit:
        raise CapacityError(f"chromatic_number limited to n <= {limit}, got {n}")
    if n == 0:
        return 0
    order = sorted(range(n), key=lambda v: -G.degree(v))
    rows = G.rows

    def colourable(k: int) -> bool:
        colour = [-1] * n

        def place(pos: int, used: int) -> bool:
            if pos == n:
                return True
            v = order[pos]
            banned = {colour[u] for u in bits(rows[v]) if colour[u] >= 0}
            # symmetry: a fresh colour is only tried once
            for c in range(min(k, used + 1)):
                if c in banned:
                    continue
                colour[v] = c
                if place(pos + 1, max(used, c + 1)):
                    return True
                colour[v] = -1
            return False

        return place(0, 0)

    k = max(1, max_clique_size(G))
    while not colourable(k):
        k += 1
    return k


def find_induced_embedding(H: Graph, K: Graph, fixed: dict[int, int] | None = None) -> list[int] | None:
    """Injective map ``H-index -> K-index`` realising H as an induced subgraph
    of K, or None.  Backtracking over degree-compatible candidates."""
    h = H.n
    if h > K.n:
        return None
    if h == 0:
        return []
    # H-vertices ordered so each one (after the first of its component) has an
    # already placed neighbour: keeps candidate masks small
    order: list[int] = []
    seen = 0
    for comp in sorted(components(H), key=lambda c: -popcount(c)):
        start = max(bits(comp), key=H.degree)
        queue = [start]
        seen |= 1 << start
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in sorted(bits(H.rows[v] & ~seen), key=lambda u: -H.degree(u)):
                seen |= 1 << u
                queue.append(u)
    hdeg = [H.degree(v) for v in range(h)]
    kdeg = [K.degree(v) for v in range(K.n)]
    krows, hrows, kfull = K.rows, H.rows, K.full_mask
    image = [-1] * h
    fixed = fixed or {}

    def place(pos: int, used: int) -> bool:
        if pos == h:
            return True
        v = order[pos]
        cand = kfull & ~used
        for p in range(pos):
            w = order[p]
            if (hrows[v] >> w) & 1:
                cand &= krows[image[w]]
            else:
                cand &= ~krows[image[w]]
        if v in fixed:
            cand &= 1 << fixed[v]
        for c in bits(cand):
            if kdeg[c] < hdeg[v]:
                continue
            image[v] = c
            if place(pos + 1, used | (1 << c)):
                return True
        image[v] = -1
        return False

    return list(image) if place(0, 0) else None


def is_p4_free(G: Graph) -> bool:
    """True iff G has no induced path on four vertices (i.e. G is a cograph)."""
    return find_induced_embedding(path_graph(4), G) is None


# --- canonical labelling ----------------------------------------------------


def _refine(rows: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement: split cells by neighbour counts into every cell."""
    while True:
        masks = [mask_of(c) for c in cells]
        new: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                key = tuple(popcount(rows[v] & m) for m in masks)
                groups.setdefault(key, []).append(v)
            for key in sorted(groups):
                new.append(groups[key])
        if len(new) == len(cells):
            return new
        cells = new


def _code(rows: Sequence[int], order: Sequence[int]) -> int:
    """Upper-triangle adjacency bits of the relabelled graph, column-major."""
    code = 0
    for j in range(1, len(order)):
        rj = rows[order[j]]
        for i in range(j):
            code = (code << 1) | ((rj >> order[i]) & 1)
    return code


def _canon_prime(rows: Sequence[int], verts: list[int]) -> tuple[int, list[int]]:
    best: list = [None, None]

    def search(cells):
        cells = _refine(rows, cells)
        target = next((k for k, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _code(rows, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        cell = cells[target]
        for v in cell:
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    m = mask_of(verts)
    search(_refine(rows, [sorted(verts, key=lambda v: popcount(rows[v] & m))]))
    return best[0], best[1]


def _canon(rows: tuple[int, ...], mask: int) -> list[int]:
    """Canonical vertex order of the subgraph induced by ``mask``.

    Disjoint unions and joins are split and their parts sorted by canonical
    code; only parts that are connected and co-connected are searched."""
    verts = list(bits(mask))
    if len(verts) <= 1:
        return verts
    G = Graph([_gather(rows[v], verts) for v in verts], check=False)
    parts = components(G)
    joined = False
    if len(parts) == 1:
        co = complement(G)
        parts = components(co)
        joined = len(parts) > 1
    if len(parts) > 1:
        keyed = []
        for p in parts:
            order = [verts[i] for i in _canon(G.rows, p)]
            keyed.append(((len(order), _code(rows, order)), order))
        keyed.sort(key=lambda t: t[0])
        return [v for _, order in keyed for v in order]
    _, order = _canon_prime(G.rows, list(range(len(verts))))
    return [verts[i] for i in order]


@lru_cache(maxsize=1 << 16)
def _canonical_cached(rows: tuple[int, ...]) -> tuple[bytes, tuple[int, ...]]:
    n = len(rows)
    order = _canon(rows, (1 << n) - 1)
    code = _code(rows, order)
    nbytes = (n * (n - 1) // 2 + 7) // 8
    return n.to_bytes(2, "big") + code.to_bytes(nbytes, "big"), tuple(order)


def canonical_order(G: Graph, limit: int = CANONICAL_LIMIT) -> tuple[int, ...]:
    """Permutation ``order`` with ``order[k]`` = vertex placed at position k."""
    if G.n > limit:
        raise CapacityError(f"canonical labelling limited to n <= {limit}, got {G.n}")
    return _canonical_cached(G.rows)[1]


def canonical_form(G: Graph, limit: int = CANONICAL_LIMIT) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic."""
    if G.n > limit:
        raise CapacityError(f"canonical labelling limited to n <= {limit}, got {G.n}")
    return _canonical_cached(G.rows)[0]


def canonical_graph(G: Graph, limit: int = CANONICAL_LIMIT) -> Graph:
    order = canonical_order(G, limit)
    return Graph([_gather(G.rows[v], order) for v in order], check=False)


def is_isomorphic(G: Graph, H: Graph, limit: int = CANONICAL_LIMIT) -> bool:
    if G.n != H.n or G.num_edges() != H.num_edges():
        return False
    return canonical_form(G, limit) == canonical_form(H, limit)


# --- graph6 -------------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise PreconditionError("graph too large for graph6")


def to_graph6(G: Graph) -> str:
    n = G.n
    out = [_encode_n(n)]
    acc = nbits = 0
    for j in range(1, n):
        rj = G.rows[j]
        for i in range(j):
            acc = (acc << 1) | ((rj >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def from_graph6(text: str | bytes) -> Graph:
    """Parse one graph6 record (optional ``>>graph6<<`` header, trailing newline)."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.rstrip("\r\n")
    start = 0
    if text.startswith(">>graph6<<"):
        start = 10
    data = text[start:]
    for k, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"invalid graph6 character {ch!r}", start + k)
    if not data:
        raise GraphFormatError("empty graph6 record", start)
    vals = [ord(c) - 63 for c in data]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise GraphFormatError("truncated size field", start + len(vals))
        n, pos = 0, 8
        for v in vals[2:8]:
            n = (n << 6) | v
    else:
        if len(vals) < 4:
            raise GraphFormatError("truncated size field", start + len(vals))
        n, pos = 0, 4
        for v in vals[1:4]:
            n = (n << 6) | v
    total = n * (n - 1) // 2
    need = (total + 5) // 6
    if len(vals) - pos != need:
        raise GraphFormatError(
            f"expected {need} data bytes for n={n}, got {len(vals) - pos}", start + min(len(vals), pos + need)
        )
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (vals[pos + k // 6] >> (5 - k % 6)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if total % 6 and vals[-1] & ((1 << (6 - total % 6)) - 1):
        raise GraphFormatError("non-zero padding bits", start + len(vals) - 1)
    return Graph(rows, check=False)


def read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    return [from_graph6(line) for line in lines if line.strip()]


def graph_to_json(G: Graph) -> dict:
    d = {"graph6": to_graph6(G)}
    if G.labels is not None:
        d["labels"] = list(G.labels)
    return d


def graph_from_json(d: dict | str) -> Graph:
    if isinstance(d, str):
        d = json.loads(d)
    G = from_graph6(d["graph6"])
    labels = d.get("labels")
    if labels is not None:
        if len(labels) != G.n:
            raise GraphFormatError("labels length does not match graph6 size")
        G = Graph(G.rows, None, labels)
    return G


def all_subsets(mask: int):
    """Every submask of ``mask`` (including 0 and ``mask``)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def pairs(mask: int):
    return combinations(list(bits(mask)), 2)
