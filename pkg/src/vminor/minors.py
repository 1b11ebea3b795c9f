"""Vertex-minor and pivot-minor containment with replayable certificates.

Scripts refer to vertices by their stable ids (``Graph.ids``), so a script
stays meaningful after deletions re-index the graph.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import CapacityError, GraphFormatError, PreconditionError, ScriptError, VMError
from .gf2 import adjacency_matrix, graph_of, is_nonsingular, principal_pivot
from .graph import (
    Graph,
    bits,
    canonical_form,
    complete_graph,
    delete_vertices,
    find_induced_embedding,
    from_graph6,
    induced_subgraph,
    local_complement,
    max_clique_size,
    pivot_edge,
    to_graph6,
)
from .setpivot import decompose_set_pivot

DEFAULT_NODE_LIMIT = 100_000


def default_node_limit() -> int:
    return int(os.environ.get("VM_NODE_LIMIT", DEFAULT_NODE_LIMIT))


@dataclass(frozen=True)
class Step:
    """One rewriting step: ``lc`` at v, ``pivot`` on edge uv, or ``delete`` v."""

    op: str
    v: int
    u: int | None = None

    def __post_init__(self):
        if self.op not in ("lc", "pivot", "delete"):
            raise PreconditionError(f"unknown step op {self.op!r}")
        if (self.op == "pivot") != (self.u is not None):
            raise PreconditionError("pivot steps need u and v; other steps only v")

    def to_json(self) -> dict:
        if self.op == "pivot":
            return {"op": "pivot", "u": self.u, "v": self.v}
        return {"op": self.op, "v": self.v}

    @classmethod
    def from_json(cls, d: dict) -> "Step":
        try:
            return cls(d["op"], int(d["v"]), None if d.get("u") is None else int(d["u"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphFormatError(f"bad script step {d!r}") from exc

    def __str__(self) -> str:
        if self.op == "pivot":
            return f"PIVOT({self.u},{self.v})"
        return f"{self.op.upper()}({self.v})"


def LC(v: int) -> Step:
    return Step("lc", v)


def PIVOT(u: int, v: int) -> Step:
    return Step("pivot", v, u)


def DELETE(v: int) -> Step:
    return Step("delete", v)


def apply_step(G: Graph, step: Step) -> Graph:
    if step.op == "lc":
        return local_complement(G, G.index_of(step.v))
    if step.op == "pivot":
        return pivot_edge(G, G.index_of(step.u), G.index_of(step.v))
    return delete_vertices(G, 1 << G.index_of(step.v))


def apply_script(G: Graph, script) -> Graph:
    """Replay ``script``; the first failing step is reported by index."""
    for k, step in enumerate(script):
        try:
            G = apply_step(G, step)
        except PreconditionError as exc:
            raise ScriptError(str(exc), k) from None
    return G


def expand_pivots(script) -> list[Step]:
    """Rewrite every PIVOT(u,v) as LC(u), LC(v), LC(u)."""
    out = []
    for st in script:
        if st.op == "pivot":
            out += [LC(st.u), LC(st.v), LC(st.u)]
        else:
            out.append(st)
    return out


# --- certificates -----------------------------------------------------------


class CertificateError(VMError):
    """A certificate failed verification."""


@dataclass
class MinorCertificate:
    kind: str  # "vertex-minor" | "pivot-minor"
    host: Graph
    target: Graph
    script: list[Step]
    mapping: dict[int, int]  # target index -> surviving host id
    matrix_witness: tuple[list[int], list[int]] | None = None  # (X, Y) as host ids
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = {
            "kind": self.kind,
            "host": to_graph6(self.host),
            "target": to_graph6(self.target),
            "script": [s.to_json() for s in self.script],
            "mapping": {str(k): v for k, v in sorted(self.mapping.items())},
        }
        if self.host.labels is not None:
            d["host_labels"] = list(self.host.labels)
        if self.target.labels is not None:
            d["target_labels"] = list(self.target.labels)
        if self.matrix_witness is not None:
            X, Y = self.matrix_witness
            d["matrix_witness"] = {"X": sorted(X), "Y": sorted(Y)}
        d.update(self.extra)
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    @classmethod
    def from_json(cls, d: dict | str) -> "MinorCertificate":
        if isinstance(d, str):
            d = json.loads(d)
        try:
            host = from_graph6(d["host"])
            if "host_labels" in d:
                host = Graph(host.rows, None, d["host_labels"])
            target = from_graph6(d["target"])
            if "target_labels" in d:
                target = Graph(target.rows, None, d["target_labels"])
            script = [Step.from_json(s) for s in d["script"]]
            mapping = {int(k): int(v) for k, v in d["mapping"].items()}
            mw = d.get("matrix_witness")
            witness = None if mw is None else (list(mw["X"]), list(mw["Y"]))
        except KeyError as exc:
            raise GraphFormatError(f"certificate missing field {exc}") from None
        known = {"kind", "host", "target", "script", "mapping", "matrix_witness", "host_labels", "target_labels"}
        extra = {k: v for k, v in d.items() if k not in known}
        return cls(d.get("kind", ""), host, target, script, mapping, witness, extra)


def _check_mapped(result: Graph, target: Graph, mapping: dict[int, int], what: str) -> None:
    if sorted(mapping) != list(range(target.n)):
        raise CertificateError("mapping must cover every target vertex exactly once")
    if len(set(mapping.values())) != target.n:
        raise CertificateError("mapping is not injective")
    if sorted(result.ids) != sorted(mapping.values()):
        raise CertificateError(f"{what} leaves vertices {sorted(result.ids)}, mapping expects {sorted(mapping.values())}")
    for i in range(target.n):
        a = result.index_of(mapping[i])
        for j in range(i + 1, target.n):
            b = result.index_of(mapping[j])
            if result.has_edge(a, b) != target.has_edge(i, j):
                raise CertificateError(f"{what}: adjacency of target pair ({i},{j}) differs")


def verify_certificate(cert: MinorCertificate) -> None:
    """Raise CertificateError unless the certificate replays to its target."""
    if cert.kind not in ("vertex-minor", "pivot-minor"):
        raise CertificateError(f"unknown certificate kind {cert.kind!r}")
    if cert.kind == "pivot-minor" and any(s.op == "lc" for s in cert.script):
        raise CertificateError("pivot-minor script contains a local complementation")
    try:
        result = apply_script(cert.host, cert.script)
    except (ScriptError, PreconditionError) as exc:
        raise CertificateError(f"script does not replay: {exc}") from None
    _check_mapped(result, cert.target, cert.mapping, "script")
    if cert.matrix_witness is not None:
        if cert.kind != "pivot-minor":
            raise CertificateError("matrix witness only applies to pivot-minors")
        X, Y = (sum(1 << cert.host.index_of(v) for v in S) for S in cert.matrix_witness)
        M = adjacency_matrix(cert.host)
        if not is_nonsingular(M, X):
            raise CertificateError("A(host)[X] is singular")
        P = graph_of(principal_pivot(M, X), cert.host)
        _check_mapped(induced_subgraph(P, Y), cert.target, cert.mapping, "matrix witness")


def is_valid(cert: MinorCertificate) -> bool:
    try:
        verify_certificate(cert)
    except CertificateError:
        return False
    return True


def _finish(kind, G, H, script, K, emb, witness=None) -> MinorCertificate:
    keep = {K.ids[c] for c in emb}
    script = list(script) + [DELETE(v) for v in G.ids if v not in keep]
    cert = MinorCertificate(kind, G, H, script, {i: K.ids[c] for i, c in enumerate(emb)}, witness)
    verify_certificate(cert)
    return cert


# --- local equivalence --------------------------------------------------------


@dataclass
class Orbit:
    """Locally equivalent graphs up to isomorphism.  ``members`` maps a
    canonical form to a concrete labelled graph and the LC script reaching
    it from the start graph."""

    members: dict[bytes, tuple[Graph, list[Step]]]
    truncated: bool

    def __len__(self) -> int:
        return len(self.members)

    def graphs(self) -> list[Graph]:
        return [g for g, _ in self.members.values()]


def local_equivalence_orbit(G: Graph, node_limit: int | None = None, limit: int = 12) -> Orbit:
    """Breadth-first search over G*v moves, deduplicated by canonical form."""
    if G.n > limit:
        raise CapacityError(f"orbit search limited to n <= {limit}, got {G.n}")
    node_limit = default_node_limit() if node_limit is None else node_limit
    members = {canonical_form(G): (G, [])}
    queue = deque([G])
    while queue:
        cur = queue.popleft()
        script = members[canonical_form(cur)][1]
        for v in range(cur.n):
            if not cur.rows[v]:
                continue
            nxt = local_complement(cur, v)
            key = canonical_form(nxt)
            if key in members:
                continue
            if len(members) >= node_limit:
                return Orbit(members, True)
            members[key] = (nxt, script + [LC(cur.ids[v])])
            queue.append(nxt)
    return Orbit(members, False)


def _embedding_avoiding(H: Graph, K: Graph, avoid: set[int]) -> list[int] | None:
    """Induced copy of H in K, preferring one that misses the rewritten
    vertices (so they are the ones deleted)."""
    keep = [i for i in range(K.n) if K.ids[i] not in avoid]
    if avoid and len(keep) >= H.n:
        emb = find_induced_embedding(H, induced_subgraph(K, keep))
        if emb is not None:
            return [keep[c] for c in emb]
    return find_induced_embedding(H, K)


def is_vertex_minor(G: Graph, H: Graph, limit: int = 10, node_limit: int | None = None) -> MinorCertificate | None:
    """Certificate that H is a vertex-minor of G, or None.

    Deleting a vertex commutes with local complementation at any other
    vertex, so every vertex-minor is an induced subgraph of a graph locally
    equivalent to G; the orbit is searched up to isomorphism."""
    if G.n > limit:
        raise CapacityError(f"vertex-minor search limited to n <= {limit}, got {G.n}")
    if H.n > G.n:
        return None
    orbit = local_equivalence_orbit(G, node_limit)
    for K, script in orbit.members.values():
        emb = _embedding_avoiding(H, K, {st.v for st in script})
        if emb is not None:
            return _finish("vertex-minor", G, H, script, K, emb)
    if orbit.truncated:
        raise CapacityError("local-equivalence orbit truncated; raise the node limit")
    return None


def even_subsets(n: int):
    """Vertex masks of even size in ascending size, then ascending mask."""
    for size in range(0, n + 1, 2):
        for combo in combinations(range(n), size):
            yield sum(1 << i for i in combo)


def nonsingular_pivots(G: Graph):
    """Yield ``(X, graph of A(G)*X)`` for every non-singular even X (odd
    principal submatrices of a graph are always singular)."""
    M = adjacency_matrix(G)
    for X in even_subsets(G.n):
        if X == 0:
            yield 0, G
        elif is_nonsingular(M, X):
            yield X, graph_of(principal_pivot(M, X), G)


def _pivot_script(G: Graph, X: int) -> list[Step]:
    if X == 0:
        return []
    pairing = decompose_set_pivot(G, X)
    return [PIVOT(G.ids[a], G.ids[b]) for a, b in pairing.pairs]


def is_pivot_minor(G: Graph, H: Graph, limit: int = 10) -> MinorCertificate | None:
    """Certificate that H is a pivot-minor of G, or None.

    Searches X with A(G)[X] non-singular (smallest |X| first) and an induced
    copy of H in the graph of A(G)*X; the certificate carries both the (X, Y)
    witness and an equivalent edge-pivot script."""
    if G.n > limit:
        raise CapacityError(f"pivot-minor search limited to n <= {limit}, got {G.n}")
    if H.n > G.n:
        return None
    seen = set()
    for X, P in nonsingular_pivots(G):
        key = canonical_form(P)
        if key in seen:
            continue
        seen.add(key)
        emb = find_induced_embedding(H, P)
        if emb is None:
            continue
        script = _pivot_script(G, X)
        witness = ([G.ids[i] for i in bits(X)], sorted(P.ids[c] for c in emb))
        return _finish("pivot-minor", G, H, script, P, emb, witness)
    return None


def pivot_minor_to_vertex_minor(cert: MinorCertificate) -> MinorCertificate:
    if cert.kind != "pivot-minor":
        raise PreconditionError("expected a pivot-minor certificate")
    try:
        verify_certificate(cert)
    except CertificateError as exc:
        raise PreconditionError(f"invalid input certificate: {exc}") from None
    out = MinorCertificate("vertex-minor", cert.host, cert.target, expand_pivots(cert.script), dict(cert.mapping))
    verify_certificate(out)
    return out


def max_clique_pivot_minor(G: Graph, limit: int = 9) -> tuple[int, MinorCertificate | None]:
    """Largest t with K_t a pivot-minor of G, and a certificate for it."""
    if G.n > limit:
        raise CapacityError(f"max_clique_pivot_minor limited to n <= {limit}, got {G.n}")
    if G.n == 0:
        return 0, None
    best = 0
    for _, P in nonsingular_pivots(G):
        best = max(best, max_clique_size(P))
        if best == G.n:
            break
    cert = is_pivot_minor(G, complete_graph(best), limit=limit)
    assert cert is not None
    return best, cert


def longest_induced_path(G: Graph, cap: int | None = None) -> list[int]:
    """Vertices of a longest induced path (at most ``cap`` edges)."""
    best: list[int] = []
    cap = G.n if cap is None else cap

    def extend(path: list[int], forbidden: int):
        nonlocal best
        if len(path) > len(best):
            best = list(path)
        if len(best) - 1 >= cap or len(path) - 1 >= cap:
            return
        end = path[-1]
        for w in bits(G.rows[end] & ~forbidden):
            path.append(w)
            extend(path, forbidden | G.rows[end] | (1 << end) | (1 << w))
            path.pop()

    for v in range(G.n):
        extend([v], 1 << v)
        if len(best) - 1 >= cap:
            break
    return best


def max_path_vertex_minor(G: Graph, t_max: int, limit: int = 10, node_limit: int | None = None) -> int:
    """Largest path length (edges) <= t_max present as a vertex-minor."""
    if G.n > limit:
        raise CapacityError(f"max_path_vertex_minor limited to n <= {limit}, got {G.n}")
    orbit = local_equivalence_orbit(G, node_limit)
    if orbit.truncated:
        raise CapacityError("local-equivalence orbit truncated; raise the node limit")
    best = 0
    for K in orbit.graphs():
        best = max(best, len(longest_induced_path(K, t_max)) - 1)
        if best >= t_max:
            break
    return best


# --- brute-force closures (independent oracles) -------------------------------


def _closure(G: Graph, moves) -> set[bytes]:
    """Canonical forms of every labelled state reachable by ``moves`` and
    single-vertex deletions."""
    seen = {(G.ids, G.rows)}
    forms = set()
    stack = [G]
    while stack:
        cur = stack.pop()
        forms.add(canonical_form(cur))
        nxt = [delete_vertices(cur, 1 << v) for v in range(cur.n)] + list(moves(cur))
        for K in nxt:
            key = (K.ids, K.rows)
            if key not in seen:
                seen.add(key)
                stack.append(K)
    return forms


def pivot_minor_closure(G: Graph) -> set[bytes]:
    """Every pivot-minor of G (canonical forms) by exhaustive pivot/delete sequences."""
    return _closure(G, lambda K: (pivot_edge(K, u, v) for u, v in K.edges()))


def vertex_minor_closure(G: Graph) -> set[bytes]:
    """Every vertex-minor of G (canonical forms) by exhaustive LC/delete sequences."""
    return _closure(G, lambda K: (local_complement(K, v) for v in range(K.n)))


__all__ = [
    "Step", "LC", "PIVOT", "DELETE", "apply_step", "apply_script", "expand_pivots",
    "MinorCertificate", "CertificateError", "verify_certificate", "is_valid",
    "Orbit", "local_equivalence_orbit", "is_vertex_minor", "is_pivot_minor",
    "pivot_minor_to_vertex_minor", "max_clique_pivot_minor", "max_path_vertex_minor",
    "longest_induced_path", "nonsingular_pivots", "even_subsets",
    "pivot_minor_closure", "vertex_minor_closure",
]
