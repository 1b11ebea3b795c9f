"""
How large a clique can a pivot hide?
====================================

Over every connected graph of small tree-depth, find the largest clique
reachable as a pivot-minor and compare it with 3^(d-1).
"""

from vminor.constructions import clique_bound_experiment

for d in (1, 2, 3):
    r = clique_bound_experiment(d, 7)
    print(f"d={d}: {r.checked:4d} graphs, largest clique {r.max_found}, bound {r.bound}")
    for w in r.witnesses[:3]:
        print("   witness", w["graph6"])
