"""A first walk through the hypergraph type and its structural queries.

Builds the weighted triangle-with-leaves source: three edges of weights
1, 3, 2 arranged so users 1, 2, 3 pairwise share an edge and users 4, 5, 6
each see exactly one of them.
"""

from hyperkey import Hypergraph

h = Hypergraph(
    "123456",
    [
        ("a", "124", 1),
        ("b", "235", 3),
        ("c", "136", 2),
    ],
)

print("vertices:", sorted(h.vertices))
print("edges:")
for e in h.edges:
    print(f"  {e.id}: members={sorted(e.members)} weight={e.weight}")

print("degrees:", {v: h.degree(v) for v in sorted(h.vertices)})
print("min edge weight:", h.min_weight())

# coverage entropy of a vertex set = total weight of edges meeting it
from hyperkey import entropy

for group in ("1", "14", "123", "456"):
    print(f"entropy({group}) = {entropy(h, group)}")

# the three edges close a Berge cycle through users 1, 2, 3
cycle = h.find_berge_cycle()
print("berge cycle:", cycle.vertices, "via", cycle.edges)
print("cycle checks out:", cycle.is_valid_in(h))

print("connected:", h.is_connected())
print("hypertree:", h.is_hypertree())
print("minimally connected:", h.is_mch())

# dropping any one edge must disconnect a minimally connected source
for eid in h.edge_ids:
    kept = [e for e in h.edges if e.id != eid]
    print(f"without {eid}: connected =", Hypergraph(h.vertices, kept).is_connected())
