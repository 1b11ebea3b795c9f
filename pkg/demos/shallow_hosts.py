"""
Shallow hosts from SC and BSC decompositions
============================================

A graph of SC-depth k is a vertex-minor of a graph of tree-depth at most
k + 1; bipartite graphs of BSC-depth k are pivot-minors of graphs of
tree-depth at most 2k + 1.
"""

from vminor.constructions import bsc_to_pivot_minor_host, sc_to_vertex_minor_host
from vminor.depth import bsc_depth, sc_depth, sc_to_json, tree_depth
from vminor.graph import cycle_graph, path_graph

G = path_graph(6)
k, D = sc_depth(G)
print(f"P6 has SC-depth {k}: {sc_to_json(D)}")

W = sc_to_vertex_minor_host(D)
td, _ = tree_depth(W.host, limit=20)
print(f"host: {W.host.n} vertices (apexes {[W.host.labels[v] for v in W.apexes]}), tree-depth {td} <= {k + 1}")
print("script:", " ".join(str(s) for s in W.script))

# the bipartite route uses an apex edge per node and pivots instead
C = cycle_graph(6)
k, D = bsc_depth(C)
W = bsc_to_pivot_minor_host(D)
td, _ = tree_depth(W.host, limit=20)
print(f"C6 has BSC-depth {k}; pivot host on {W.host.n} vertices has tree-depth {td} <= {2 * k + 1}")
