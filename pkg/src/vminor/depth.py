"""Exact tree-depth, SC-depth, BSC-depth and tree-model search for small graphs.

Decompositions are plain nested dataclasses whose leaves are vertex indices
(ints) of the graph they evaluate to.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Union

from .errors import CapacityError, PreconditionError
from .graph import (
    Graph,
    bits,
    canonical_graph,
    canonical_order,
    complement_between,
    complement_on,
    components,
    induced_subgraph,
    mask_of,
    popcount,
)

# --- tree-depth ----------------------------------------------------------------


@dataclass(frozen=True)
class TreeDepthDecomposition:
    """Rooted forest on V(G): ``parent[v]`` is v's parent, None for roots."""

    parent: tuple[int | None, ...]

    @property
    def roots(self) -> list[int]:
        return [v for v, p in enumerate(self.parent) if p is None]

    def ancestors(self, v: int) -> list[int]:
        out = []
        seen = {v}
        p = self.parent[v]
        while p is not None:
            if p in seen:
                raise PreconditionError("parent map contains a cycle")
            seen.add(p)
            out.append(p)
            p = self.parent[p]
        return out

    @property
    def height(self) -> int:
        """Longest root-to-leaf path length (edges); -1 for the empty forest."""
        return max((len(self.ancestors(v)) for v in range(len(self.parent))), default=-1)

    def to_json(self) -> dict:
        return {"parent": list(self.parent), "height": self.height}

    @classmethod
    def from_json(cls, d: dict) -> "TreeDepthDecomposition":
        return cls(tuple(d["parent"]))


def td_violation(G: Graph, T: TreeDepthDecomposition, d: int) -> str | None:
    """Why T fails to witness td(G) <= d, or None if it does."""
    if len(T.parent) != G.n:
        return f"forest has {len(T.parent)} vertices, graph has {G.n}"
    anc_masks = []
    for v in range(G.n):
        p = T.parent[v]
        if p is not None and not 0 <= p < G.n:
            return f"parent of {v} is out of range"
        try:
            anc = T.ancestors(v)
        except PreconditionError:
            return "parent map contains a cycle"
        if len(anc) > d - 1:
            return f"vertex {v} at depth {len(anc)} exceeds height {d - 1}"
        anc_masks.append(mask_of(anc))
    for u, v in G.edges():
        if not ((anc_masks[u] >> v) & 1 or (anc_masks[v] >> u) & 1):
            return f"edge {u}{v} is not ancestor-descendant"
    return None


def verify_td(G: Graph, T: TreeDepthDecomposition, d: int) -> bool:
    """True iff T is a forest on V(G) of height <= d-1 whose closure contains G."""
    return td_violation(G, T, d) is None


def tree_depth(G: Graph, limit: int = 12) -> tuple[int, TreeDepthDecomposition]:
    """Exact tree-depth with an optimal forest.

    Components are handled separately; a connected graph needs a root v and
    costs 1 + td(G - v).  Memoised on vertex subsets."""
    if G.n > limit:
        raise CapacityError(f"tree_depth limited to n <= {limit}, got {G.n}")
    memo: dict[int, tuple[int, int]] = {}  # connected mask -> (td, root)

    def td_conn(mask: int) -> int:
        hit = memo.get(mask)
        if hit is not None:
            return hit[0]
        size = popcount(mask)
        if size == 1:
            memo[mask] = (1, mask.bit_length() - 1)
            return 1
        if mask & (mask - 1) and all(G.rows[v] & mask == mask & ~(1 << v) for v in bits(mask)):
            memo[mask] = (size, mask.bit_length() - 1)
            return size
        best, root = size + 1, -1
        order = sorted(bits(mask), key=lambda v: -popcount(G.rows[v] & mask))
        for v in order:
            sub = 0
            for c in components(G, mask & ~(1 << v)):
                sub = max(sub, td_conn(c))
                if sub + 1 >= best:
                    break
            if sub + 1 < best:
                best, root = sub + 1, v
        memo[mask] = (best, root)
        return best

    parent: list[int | None] = [None] * G.n

    def build(mask: int, above: int | None):
        for c in components(G, mask):
            td_conn(c)
            r = memo[c][1]
            parent[r] = above
            build(c & ~(1 << r), r)

    value = max((td_conn(c) for c in components(G)), default=0)
    build(G.full_mask, None)
    T = TreeDepthDecomposition(tuple(parent))
    assert verify_td(G, T, value)
    return value, T


# --- SC / BSC decompositions ---------------------------------------------------


@dataclass(frozen=True)
class SCNode:
    """Disjoint union of ``children`` followed by complementing the edges on X."""

    children: tuple
    X: frozenset


@dataclass(frozen=True)
class BSCNode:
    """Disjoint union of ``children`` followed by complementing the edges between X and Y."""

    children: tuple
    X: frozenset
    Y: frozenset


SCDecomposition = Union[int, SCNode]
BSCDecomposition = Union[int, BSCNode]


def decomposition_depth(D) -> int:
    if isinstance(D, int):
        return 0
    return 1 + max(decomposition_depth(c) for c in D.children)


def leaves(D) -> list[int]:
    if isinstance(D, int):
        return [D]
    return [v for c in D.children for v in leaves(c)]


def _eval(D, toggle) -> Graph:
    verts = leaves(D)
    n = len(verts)
    if sorted(verts) != list(range(n)):
        raise PreconditionError("malformed decomposition: leaves must be exactly 0..n-1, each once")
    rows = [0] * n

    def walk(node) -> int:
        if isinstance(node, int):
            return 1 << node
        if not node.children:
            raise PreconditionError("malformed decomposition: internal node without children")
        below = 0
        for c in node.children:
            below |= walk(c)
        toggle(node, below, rows)
        return below

    walk(D)
    return Graph(rows, check=False)


def _toggle_sc(node: SCNode, below: int, rows: list[int]) -> None:
    X = mask_of(node.X)
    if X & ~below:
        raise PreconditionError("malformed decomposition: X contains vertices outside the subtree")
    for x in bits(X):
        rows[x] ^= X & ~(1 << x)


def _toggle_bsc(node: BSCNode, below: int, rows: list[int]) -> None:
    X, Y = mask_of(node.X), mask_of(node.Y)
    if (X | Y) & ~below:
        raise PreconditionError("malformed decomposition: X/Y contain vertices outside the subtree")
    if X & Y:
        raise PreconditionError("malformed decomposition: X and Y overlap")
    for x in bits(X):
        rows[x] ^= Y
    for y in bits(Y):
        rows[y] ^= X


def eval_sc(D: SCDecomposition) -> Graph:
    return _eval(D, _toggle_sc)


def eval_bsc(D: BSCDecomposition) -> Graph:
    return _eval(D, _toggle_bsc)


def sc_to_json(D):
    if isinstance(D, int):
        return {"leaf": D}
    out = {"children": [sc_to_json(c) for c in D.children], "X": sorted(D.X)}
    if isinstance(D, BSCNode):
        out["Y"] = sorted(D.Y)
    return out


def sc_from_json(d: dict):
    if "leaf" in d:
        return int(d["leaf"])
    children = tuple(sc_from_json(c) for c in d["children"])
    if "Y" in d:
        return BSCNode(children, frozenset(d["X"]), frozenset(d["Y"]))
    return SCNode(children, frozenset(d["X"]))


# Search state is shared across calls; entries are only ever inserted.
_SC_CACHE: dict[tuple[tuple[int, ...], int], int | None] = {}
_BSC_CACHE: dict[tuple[tuple[int, ...], int], tuple[int, int] | None] = {}


def _sc_moves(n: int):
    return range(1 << n)


def _bsc_moves(n: int):
    # (X, Y) and (Y, X) give the same graph: put the lowest touched vertex in X
    for assign in product((0, 1, 2), repeat=n):
        X = mask_of(i for i, a in enumerate(assign) if a == 1)
        Y = mask_of(i for i, a in enumerate(assign) if a == 2)
        if Y and (not X or (Y & -Y) < (X & -X)):
            continue
        yield X, Y


def _parts_ok(H: Graph, k: int, member) -> bool:
    for c in sorted(components(H), key=popcount, reverse=True):
        if c & (c - 1) and not member(canonical_graph(induced_subgraph(H, c)).rows, k):
            return False
    return True


def _sc1(G: Graph) -> int | None:
    """X with G = complement_on(edgeless, X), if any: the non-isolated
    vertices must form a clique and carry every edge."""
    N = mask_of(v for v in range(G.n) if G.rows[v])
    if all(G.rows[v] == N & ~(1 << v) for v in bits(N)):
        return N
    return None


def _bsc1(G: Graph) -> tuple[int, int] | None:
    """(X, Y) with G = complement_between(edgeless, X, Y), if any."""
    N = mask_of(v for v in range(G.n) if G.rows[v])
    if not N:
        return 0, 0
    a = N & -N
    B = G.rows[a.bit_length() - 1]
    A = N & ~B
    if all(G.rows[v] == B for v in bits(A)) and all(G.rows[v] == A for v in bits(B)):
        return A, B
    return None


def _in_sc(rows: tuple[int, ...], k: int):
    """Witness X (canonical positions) if the canonical graph is in SC(k), else None."""
    key = (rows, k)
    if key in _SC_CACHE:
        return _SC_CACHE[key]
    G = Graph(rows, check=False)
    found = None
    if G.n == 1:
        found = 0
    elif k == 1:
        found = _sc1(G)
    elif k > 1:
        for X in _sc_moves(G.n):
            if _parts_ok(complement_on(G, X), k - 1, _in_sc):
                found = X
                break
    _SC_CACHE[key] = found
    return found


def _in_bsc(rows: tuple[int, ...], k: int):
    key = (rows, k)
    if key in _BSC_CACHE:
        return _BSC_CACHE[key]
    G = Graph(rows, check=False)
    found = None
    if G.n == 1:
        found = (0, 0)
    elif k == 1:
        found = _bsc1(G)
    elif k > 1:
        for X, Y in _bsc_moves(G.n):
            if _parts_ok(complement_between(G, X, Y), k - 1, _in_bsc):
                found = (X, Y)
                break
    _BSC_CACHE[key] = found
    return found


def _lift(G: Graph, cmask: int) -> int:
    order = canonical_order(G)
    return mask_of(order[p] for p in bits(cmask))


def _build_sc(G: Graph, k: int) -> SCDecomposition:
    if G.n == 1:
        return G.ids[0]
    X = _lift(G, _in_sc(canonical_graph(G).rows, k))
    H = complement_on(G, X)
    children = tuple(_build_sc(induced_subgraph(H, c), k - 1) for c in components(H))
    return SCNode(children, frozenset(G.ids[i] for i in bits(X)))


def _build_bsc(G: Graph, k: int) -> BSCDecomposition:
    if G.n == 1:
        return G.ids[0]
    cX, cY = _in_bsc(canonical_graph(G).rows, k)
    X, Y = _lift(G, cX), _lift(G, cY)
    H = complement_between(G, X, Y)
    children = tuple(_build_bsc(induced_subgraph(H, c), k - 1) for c in components(H))
    return BSCNode(children, frozenset(G.ids[i] for i in bits(X)), frozenset(G.ids[i] for i in bits(Y)))


def _min_depth(G: Graph, limit: int, member, build, name: str):
    if G.n > limit:
        raise CapacityError(f"{name} limited to n <= {limit}, got {G.n}")
    if G.n == 0:
        raise PreconditionError(f"{name} is undefined for the empty graph")
    G = G.relabel_ids()
    canon = canonical_graph(G).rows
    k = 0
    while member(canon, k) is None:
        k += 1
    return k, build(G, k)


def sc_depth(G: Graph, limit: int = 7) -> tuple[int, SCDecomposition]:
    """Least k with G in SC(k), and a decomposition of that depth."""
    k, D = _min_depth(G, limit, _in_sc, _build_sc, "sc_depth")
    assert decomposition_depth(D) <= k and eval_sc(D).rows == G.rows
    return k, D


def bsc_depth(G: Graph, limit: int = 7) -> tuple[int, BSCDecomposition]:
    """Least k with G in BSC(k), and a decomposition of that depth."""
    k, D = _min_depth(G, limit, _in_bsc, _build_bsc, "bsc_depth")
    assert decomposition_depth(D) <= k and eval_bsc(D).rows == G.rows
    return k, D


# --- tree-models ---------------------------------------------------------------


@dataclass(frozen=True)
class TreeModel:
    """Uniform-depth rooted tree over the vertices (nested tuples; leaves are
    vertex indices), a colour per vertex, and the adjacency rule
    ``signature[(c1, c2, dist)]`` (missing entries mean no edge)."""

    tree: object
    depth: int
    colors: tuple[int, ...]
    signature: dict

    def to_json(self) -> dict:
        return {
            "tree": _tree_json(self.tree),
            "depth": self.depth,
            "colors": list(self.colors),
            "signature": [
                {"c1": c1, "c2": c2, "dist": dist, "edge": bool(e)}
                for (c1, c2, dist), e in sorted(self.signature.items())
            ],
        }

    @classmethod
    def from_json(cls, d: dict) -> "TreeModel":
        sig = {(s["c1"], s["c2"], s["dist"]): bool(s["edge"]) for s in d["signature"]}
        return cls(_tree_tuple(d["tree"]), int(d["depth"]), tuple(d["colors"]), sig)


def _tree_json(t):
    return t if isinstance(t, int) else [_tree_json(c) for c in t]


def _tree_tuple(t):
    return t if isinstance(t, int) else tuple(_tree_tuple(c) for c in t)


def _leaf_paths(tree, d: int) -> dict[int, tuple[int, ...]]:
    """Leaf -> tuple of internal-node ids on its root path (root first)."""
    out: dict[int, tuple[int, ...]] = {}
    counter = [0]

    def walk(node, path, level):
        if isinstance(node, int):
            if level != d:
                raise PreconditionError(f"leaf {node} at depth {level}, expected {d}")
            if node in out:
                raise PreconditionError(f"leaf {node} appears twice")
            out[node] = path
            return
        if level >= d:
            raise PreconditionError("internal node at leaf depth")
        if not node:
            raise PreconditionError("internal node without children")
        counter[0] += 1
        me = counter[0]
        for c in node:
            walk(c, path + (me,), level + 1)

    walk(tree, (), 0)
    return out


def _distance(pu: tuple[int, ...], pv: tuple[int, ...], d: int) -> int:
    common = 0
    for a, b in zip(pu, pv):
        if a != b:
            break
        common += 1
    return 2 * (d - common + 1)


def eval_tree_model(TM: TreeModel) -> Graph:
    paths = _leaf_paths(TM.tree, TM.depth)
    n = len(paths)
    if sorted(paths) != list(range(n)) or len(TM.colors) != n:
        raise PreconditionError("tree-model leaves must be 0..n-1 with one colour each")
    for (c1, c2, dist), e in TM.signature.items():
        if bool(TM.signature.get((c2, c1, dist), False)) != bool(e):
            raise PreconditionError(f"asymmetric signature at ({c1},{c2},{dist})")
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            dist = _distance(paths[u], paths[v], TM.depth)
            if TM.signature.get((TM.colors[u], TM.colors[v], dist), False):
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph(rows, check=False)


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _trees(items: list[int], d: int):
    """Every uniform-depth-d tree with leaf set ``items`` (up to child order)."""
    if d == 0:
        if len(items) == 1:
            yield items[0]
        return
    for part in _set_partitions(items):
        if d == 1 and any(len(b) != 1 for b in part):
            continue
        for kids in product(*[list(_trees(b, d - 1)) for b in part]):
            yield tuple(kids)


def _colour_model(G: Graph, dist: list[list[int]], m: int):
    n = G.n
    colors = [-1] * n
    sig: dict[tuple[int, int, int], bool] = {}

    def place(v: int, used: int) -> bool:
        if v == n:
            return True
        for c in range(min(m, used + 1)):
            added = []
            ok = True
            for u in range(v):
                cu = colors[u]
                key = (min(c, cu), max(c, cu), dist[u][v])
                e = G.has_edge(u, v)
                have = sig.get(key)
                if have is None:
                    sig[key] = e
                    added.append(key)
                elif have != e:
                    ok = False
                    break
            if ok:
                colors[v] = c
                if place(v + 1, max(used, c + 1)):
                    return True
                colors[v] = -1
            for key in added:
                del sig[key]
        return False

    if not place(0, 0):
        return None
    full = {}
    for (a, b, dd), e in sig.items():
        full[(a, b, dd)] = e
        full[(b, a, dd)] = e
    return tuple(colors), full


def find_tree_model(G: Graph, d: int, m: int, limits: tuple[int, int, int] = (8, 2, 3)) -> TreeModel | None:
    """A tree-model of depth d with at most m colours, or None if none exists."""
    n_max, d_max, m_max = limits
    if G.n > n_max or d > d_max or m > m_max:
        raise CapacityError(f"find_tree_model limited to n <= {n_max}, d <= {d_max}, m <= {m_max}")
    if G.n == 0 or m < 1 or d < 0:
        raise PreconditionError("need a non-empty graph, m >= 1 and d >= 0")
    for tree in _trees(list(range(G.n)), d):
        paths = _leaf_paths(tree, d)
        dist = [[_distance(paths[u], paths[v], d) for v in range(G.n)] for u in range(G.n)]
        found = _colour_model(G, dist, m)
        if found is not None:
            TM = TreeModel(tree, d, found[0], found[1])
            assert eval_tree_model(TM).rows == G.rows
            return TM
    return None
