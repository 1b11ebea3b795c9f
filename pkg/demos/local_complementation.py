"""
Local complementation and pivoting
==================================

Small walk through the basic moves on a 5-cycle.
"""

from vminor.gf2 import adjacency_matrix, principal_pivot
from vminor.graph import complete_graph, cycle_graph, local_complement, pivot_edge, to_graph6
from vminor.minors import is_pivot_minor, is_vertex_minor, local_equivalence_orbit

G = cycle_graph(5)
print("C5:", G.edges())

# complementing the neighbourhood of 0 adds the chord 1-4
H = local_complement(G, 0)
print("C5 * 0:", H.edges())

# pivoting on the edge 0-1 is three local complementations, and agrees
# with the principal pivot of the adjacency matrix on {0, 1}
P = pivot_edge(G, 0, 1)
M = principal_pivot(adjacency_matrix(G), [0, 1])
print("C5 ^ 01:", P.edges(), "matrix agrees:", P.rows == M.rows)

# everything locally equivalent to C5, up to isomorphism
orbit = local_equivalence_orbit(G)
for K, script in orbit.members.values():
    print(f"  {to_graph6(K):6s} via {[str(s) for s in script]}")

# K3 is reachable both ways
for decide in (is_vertex_minor, is_pivot_minor):
    cert = decide(G, complete_graph(3))
    print(decide.__name__, [str(s) for s in cert.script])
