from hypothesis import given, settings
from hypothesis import strategies as st

from vminor.gf2 import adjacency_matrix, is_nonsingular, principal_pivot
from vminor.graph import (
    Graph,
    canonical_form,
    complement_between,
    complement_on,
    from_graph6,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
    local_complement,
    pivot_edge,
    to_graph6,
)
from vminor.minors import (
    LC,
    MinorCertificate,
    apply_script,
    is_pivot_minor,
    is_vertex_minor,
    verify_certificate,
)


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.integers(0, (1 << len(pairs)) - 1))
    return Graph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])


@st.composite
def graph_and_vertex(draw):
    G = draw(graphs())
    return G, draw(st.integers(0, G.n - 1))


@st.composite
def graph_and_edge(draw):
    G = draw(graphs(min_n=2))
    edges = G.edges()
    if not edges:
        G = Graph.from_edges(G.n, [(0, 1)])
        edges = G.edges()
    return G, draw(st.sampled_from(edges))


@st.composite
def graph_and_sets(draw):
    G = draw(graphs())
    labels = draw(st.lists(st.integers(0, 2), min_size=G.n, max_size=G.n))
    X = sum(1 << v for v, c in enumerate(labels) if c == 1)
    Y = sum(1 << v for v, c in enumerate(labels) if c == 2)
    return G, X, Y


@given(graph_and_vertex())
def test_lc_involution(gv):
    G, v = gv
    assert local_complement(local_complement(G, v), v) == G


@given(graph_and_vertex())
def test_lc_only_touches_neighbourhood(gv):
    G, v = gv
    H = local_complement(G, v)
    nb = G.rows[v]
    for a, b in ((a, b) for a in range(G.n) for b in range(a + 1, G.n)):
        inside = nb >> a & 1 and nb >> b & 1
        assert H.has_edge(a, b) == (G.has_edge(a, b) ^ bool(inside))


@given(graph_and_edge())
def test_pivot_involution_and_symmetry(ge):
    G, (u, v) = ge
    P = pivot_edge(G, u, v)
    assert pivot_edge(P, u, v) == G
    assert pivot_edge(G, v, u) == P
    assert P.rows == principal_pivot(adjacency_matrix(G), (1 << u) | (1 << v)).rows


@given(graph_and_sets())
def test_complement_involutions(gxy):
    G, X, Y = gxy
    assert complement_on(complement_on(G, X), X) == G
    assert complement_between(complement_between(G, X, Y), X, Y) == G


@given(graphs(max_n=12))
def test_graph6_round_trip(G):
    assert from_graph6(to_graph6(G)).rows == G.rows
    assert graph_from_json(graph_to_json(G)).rows == G.rows


@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_canonical_form_invariant(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    H = Graph.from_edges(G.n, [(perm[a], perm[b]) for a, b in G.edges()])
    assert canonical_form(G) == canonical_form(H)


@given(graphs(max_n=8), st.integers(0, 255))
def test_set_pivot_involution(G, S):
    M = adjacency_matrix(G)
    S &= G.full_mask
    if is_nonsingular(M, S):
        P = principal_pivot(M, S)
        assert P.is_symmetric() and P.has_zero_diagonal()
        assert principal_pivot(P, S) == M


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=7), st.lists(st.integers(0, 6), max_size=4), st.integers(1, 127))
def test_emitted_certificates_verify(G, lcs, keep):
    script = [LC(v) for v in lcs if v < G.n]
    K = apply_script(G, script)
    H = induced_subgraph(K, keep & G.full_mask or 1)
    cert = is_vertex_minor(G, H)
    assert cert is not None
    verify_certificate(MinorCertificate.from_json(cert.dumps()))
    p = is_pivot_minor(G, H)
    if p is not None:
        verify_certificate(MinorCertificate.from_json(p.dumps()))
