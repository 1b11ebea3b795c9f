"""
Long induced paths in the threshold graphs H_n
==============================================

H_n is a cograph, so it has no induced P4, yet a handful of edge pivots
uncover an induced path with n edges.
"""

from vminor.constructions import hn_path_certificate, hn_path_sequence, make_hn
from vminor.graph import is_p4_free
from vminor.minors import apply_script

n = 5
H = make_hn(n)
print(f"H_{n}: {H.n} vertices, {H.num_edges()} edges, P4-free: {is_p4_free(H)}")

cert = hn_path_certificate(n)
print("script:", " ".join(str(s) for s in cert.script))

# A pivot on a_i b_i hands b_i's neighbourhood to a_i, so the path runs
# through a_2 .. a_{n-1} rather than b_2 .. b_{n-1}.
final = apply_script(cert.host, cert.script)
names = [H.labels[v] for v in hn_path_sequence(n)]
print("path:", " - ".join(names))
print("edges:", [(final.name(u), final.name(v)) for u, v in final.edges()])
print("certificate target labels:", cert.target.labels)
