"""Graph-to-host compilers and the related explicit constructions.

* SC decomposition of depth k  ->  host of tree-depth <= k+1 with G as a
  vertex-minor (one apex per decomposition node, local complementation at
  the apexes bottom-up).
* BSC decomposition of depth k ->  host of tree-depth <= 2k+1 with G as a
  pivot-minor (an apex edge per node, pivoted bottom-up).
* conversions between SC and BSC decompositions, the threshold graphs H_n
  with their long-path pivot-minors, and the clique pivot-minor experiment.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .corpus import connected_graphs
from .depth import (
    BSCDecomposition,
    BSCNode,
    SCDecomposition,
    SCNode,
    TreeDepthDecomposition,
    decomposition_depth,
    eval_bsc,
    eval_sc,
    td_violation,
    tree_depth,
)
from .errors import PreconditionError, VMError
from .graph import Graph, bits, is_bipartite, mask_of, path_graph, to_graph6
from .minors import DELETE, LC, PIVOT, MinorCertificate, Step, apply_script, max_clique_pivot_minor, verify_certificate
from .setpivot import PivotPairing, decompose_set_pivot, find_pivotable_pair

__all__ = [
    "HostWitness", "sc_to_vertex_minor_host", "bsc_to_pivot_minor_host",
    "PivotPairing", "find_pivotable_pair", "decompose_set_pivot",
    "sc_from_bsc", "bsc_from_sc_bipartite", "make_hn", "hn_ids", "hn_path_sequence", "hn_path_certificate",
    "clique_bound_experiment",
]


@dataclass
class HostWitness:
    """Host U, forest T with U in cl(T), and a script turning U into ``target``.

    U's first ``target.n`` vertices are the target's vertices (same indices);
    the rest are apexes, the only vertices the script rewrites at."""

    host: Graph
    decomposition: TreeDepthDecomposition
    script: list[Step]
    target: Graph
    depth_bound: int
    kind: str  # "vertex-minor" | "pivot-minor"

    @property
    def apexes(self) -> list[int]:
        return list(range(self.target.n, self.host.n))

    def verify(self) -> None:
        """Raise VMError unless every invariant of the witness holds."""
        why = td_violation(self.host, self.decomposition, self.depth_bound)
        if why is not None:
            raise VMError(f"host not in closure of forest: {why}")
        apex = set(self.apexes)
        for k, st in enumerate(self.script):
            touched = [st.v] if st.u is None else [st.u, st.v]
            if st.op != "delete" and not apex.issuperset(touched):
                raise VMError(f"step {k} rewrites at a target vertex")
            if self.kind == "pivot-minor" and st.op == "lc":
                raise VMError(f"step {k} is a local complementation in a pivot-minor script")
        if sorted(st.v for st in self.script if st.op == "delete") != sorted(apex):
            raise VMError("deletions must remove exactly the apex vertices")
        result = apply_script(self.host, self.script)
        if result.ids != tuple(range(self.target.n)) or result.rows != self.target.rows:
            raise VMError("replay does not reproduce the target exactly")

    def to_certificate(self) -> MinorCertificate:
        cert = MinorCertificate(
            self.kind,
            self.host,
            self.target,
            list(self.script),
            {i: i for i in range(self.target.n)},
            extra={"tree_depth_witness": self.decomposition.to_json(), "td_bound": self.depth_bound},
        )
        verify_certificate(cert)
        return cert


class _HostBuilder:
    def __init__(self, target: Graph):
        self.n = target.n
        self.rows = [0] * self.n
        self.parent: list[int | None] = [None] * self.n
        self.labels = [target.name(i) for i in range(self.n)]

    def new_vertex(self, label: str) -> int:
        self.rows.append(0)
        self.parent.append(None)
        self.labels.append(label)
        return len(self.rows) - 1

    def join(self, a: int, mask: int) -> None:
        for b in bits(mask):
            self.rows[a] |= 1 << b
            self.rows[b] |= 1 << a

    def host(self) -> Graph:
        return Graph(self.rows, None, self.labels)


def _path(path: tuple[int, ...]) -> str:
    return ".".join(map(str, path)) if path else "root"


def sc_to_vertex_minor_host(D: SCDecomposition, labels=None) -> HostWitness:
    """Host of tree-depth <= depth(D)+1 having eval_sc(D) as a vertex-minor."""
    G = eval_sc(D)
    if labels is not None:
        G = Graph(G.rows, None, labels)
    k = decomposition_depth(D)
    b = _HostBuilder(G)

    def build(node, path) -> tuple[int, list[Step]]:
        if isinstance(node, int):
            return node, []
        r = b.new_vertex(f"r@{_path(path)}")
        script: list[Step] = []
        for i, child in enumerate(node.children):
            root, sub = build(child, path + (i,))
            b.parent[root] = r
            script += sub
        b.join(r, mask_of(node.X))
        return r, script + [LC(r)]

    _, script = build(D, ())
    U = b.host()
    script += [DELETE(v) for v in range(G.n, U.n)]
    W = HostWitness(U, TreeDepthDecomposition(tuple(b.parent)), script, G, k + 1, "vertex-minor")
    W.verify()
    return W


def bsc_to_pivot_minor_host(D: BSCDecomposition, labels=None) -> HostWitness:
    """Host of tree-depth <= 2*depth(D)+1 having eval_bsc(D) as a pivot-minor."""
    G = eval_bsc(D)
    if labels is not None:
        G = Graph(G.rows, None, labels)
    k = decomposition_depth(D)
    b = _HostBuilder(G)

    def build(node, path) -> tuple[int, list[Step]]:
        if isinstance(node, int):
            return node, []
        rx = b.new_vertex(f"rx@{_path(path)}")
        ry = b.new_vertex(f"ry@{_path(path)}")
        b.parent[ry] = rx
        script: list[Step] = []
        for i, child in enumerate(node.children):
            root, sub = build(child, path + (i,))
            b.parent[root] = ry
            script += sub
        b.join(rx, (1 << ry) | mask_of(node.X))
        b.join(ry, mask_of(node.Y))
        return rx, script + [PIVOT(rx, ry)]

    _, script = build(D, ())
    U = b.host()
    script += [DELETE(v) for v in range(G.n, U.n)]
    W = HostWitness(U, TreeDepthDecomposition(tuple(b.parent)), script, G, 2 * k + 1, "pivot-minor")
    W.verify()
    return W


def sc_from_bsc(D: BSCDecomposition) -> SCDecomposition:
    """Each BSC node (X, Y) becomes three stacked SC nodes X, then Y, then X|Y:
    complementing twice inside X and inside Y cancels, between them once."""
    if isinstance(D, int):
        return D
    children = tuple(sc_from_bsc(c) for c in D.children)
    inner = SCNode(children, D.X)
    middle = SCNode((inner,), D.Y)
    out = SCNode((middle,), D.X | D.Y)
    return out


def bsc_from_sc_bipartite(D: SCDecomposition, bipartition: tuple) -> BSCDecomposition:
    """Replace every complement set X by the pair (X & A, X & B).  For a
    bipartite graph with sides A, B this reproduces the graph: A and B stay
    independent and A-B pairs are toggled exactly as before."""
    G = eval_sc(D)
    A, B = (s if isinstance(s, int) else mask_of(s) for s in bipartition)
    if A & B or (A | B) != G.full_mask:
        raise PreconditionError("bipartition must split V(G) into two disjoint sides")
    if any(G.rows[v] & A for v in bits(A)) or any(G.rows[v] & B for v in bits(B)):
        raise PreconditionError("graph is not bipartite with the given sides")
    sideA = frozenset(bits(A))

    def conv(node):
        if isinstance(node, int):
            return node
        return BSCNode(tuple(conv(c) for c in node.children), node.X & sideA, node.X - sideA)

    out = conv(D)
    if eval_bsc(out).rows != G.rows:
        raise VMError("converted decomposition does not evaluate to the input graph")
    return out


def bipartition_of(G: Graph) -> tuple[int, int]:
    sides = is_bipartite(G)
    if sides is None:
        raise PreconditionError("graph is not bipartite")
    return sides


# --- H_n ---------------------------------------------------------------------


def hn_ids(n: int) -> tuple[list[int], list[int]]:
    """Vertex indices of a_1..a_n and b_1..b_n in make_hn(n)."""
    return [2 * i for i in range(n)], [2 * i + 1 for i in range(n)]


def make_hn(n: int) -> Graph:
    """The threshold graph H_n on a_1, b_1, ..., a_n, b_n: b_i b_j for all
    i < j, and b_i a_j for i <= j."""
    if n < 1:
        raise PreconditionError("H_n needs n >= 1")
    a, b = hn_ids(n)
    edges = [(b[i], b[j]) for i in range(n) for j in range(i + 1, n)]
    edges += [(b[i], a[j]) for i in range(n) for j in range(i, n)]
    labels = [f"{s}{i + 1}" for i in range(n) for s in "ab"]
    return Graph.from_edges(2 * n, edges, labels=labels)


def hn_path_sequence(n: int) -> list[int]:
    """Host indices of the induced path left after pivoting a_i b_i for
    i = 2..n-1.  Pivoting an edge exchanges the roles of its ends, so the
    vertex in position b_i after the pivot is a_i."""
    a, b = hn_ids(n)
    return [a[0], b[0]] + a[1 : n - 1] + [b[n - 1]]


def hn_path_certificate(n: int) -> MinorCertificate:
    """Pivot-minor certificate for a path with n edges in H_n: pivot a_i b_i
    for i = 2..n-1, then delete everything off :func:`hn_path_sequence`."""
    if n < 2:
        raise PreconditionError("hn_path_certificate needs n >= 2")
    H = make_hn(n)
    a, b = hn_ids(n)
    seq = hn_path_sequence(n)
    keep = set(seq)
    script = [PIVOT(a[i], b[i]) for i in range(1, n - 1)] + [DELETE(v) for v in range(2 * n) if v not in keep]
    target = Graph(path_graph(n + 1).rows, None, [H.labels[v] for v in seq])
    X = [v for i in range(1, n - 1) for v in (a[i], b[i])]
    cert = MinorCertificate("pivot-minor", H, target, script, dict(enumerate(seq)), (X, sorted(seq)))
    verify_certificate(cert)
    return cert


# --- clique experiment --------------------------------------------------------


def _clique_job(G: Graph) -> tuple[str, int, MinorCertificate | None]:
    t, cert = max_clique_pivot_minor(G)
    return to_graph6(G), t, cert


@dataclass
class CliqueBoundReport:
    d: int
    n_max: int
    bound: int
    max_found: int
    checked: int
    witnesses: list[dict] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.max_found <= self.bound

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n_max": self.n_max,
            "bound": self.bound,
            "max_found": self.max_found,
            "checked": self.checked,
            "holds": self.holds,
            "witnesses": self.witnesses,
        }


def clique_bound_experiment(d: int, n_max: int, graphs: list[Graph] | None = None, threads: int = 1) -> CliqueBoundReport:
    """Largest clique pivot-minor over connected graphs of tree-depth <= d
    on <= n_max vertices, compared with the bound 3^(d-1)."""
    if d < 1:
        raise PreconditionError("d must be positive")
    if graphs is None:
        if d > 3 or n_max > 7:
            from .errors import CapacityError

            raise CapacityError("clique_bound_experiment enumerates only d <= 3, n_max <= 7")
        graphs = connected_graphs(n_max)
    pool = [G for G in graphs if G.n <= n_max and tree_depth(G)[0] <= d]
    if threads > 1:
        with ProcessPoolExecutor(threads) as ex:
            results = list(ex.map(_clique_job, pool, chunksize=8))
    else:
        results = [_clique_job(G) for G in pool]
    best = max((t for _, t, _ in results), default=0)
    witnesses = [{"graph6": g6, "clique": t, "certificate": c.to_json()} for g6, t, c in results if t == best]
    return CliqueBoundReport(d, n_max, 3 ** (d - 1), best, len(pool), witnesses)
