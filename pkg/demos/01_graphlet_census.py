"""
Counting small connected graph shapes
=====================================

Every connected graph on k nodes collapses to one canonical integer, so
shapes can be enumerated, labelled, and told apart. Some shapes have
internal symmetry (swapping nodes changes nothing); those are ambiguous
as alignment anchors because a match to one of them does not pin down
which node went where.
"""

from localign import (
    Graph,
    alignment_multiplicity,
    canonize,
    encode_graphlet,
    enumerate_connected_graphlets,
    is_ambiguous,
)

for k in range(3, 7):
    ids = enumerate_connected_graphlets(k)
    plain = sum(1 for cid in ids if not is_ambiguous(cid))
    print(f"k={k}: {len(ids):4d} connected shapes, {plain:3d} unambiguous")

# the census for k=6 starts showing asymmetric shapes; list a few of each
print()
ids6 = enumerate_connected_graphlets(6)
sample = ([c for c in ids6 if is_ambiguous(c)][:3]
          + [c for c in ids6 if not is_ambiguous(c)][:3])
for cid in sample:
    tag = "ambiguous" if is_ambiguous(cid) else "unambiguous"
    print(f"  {cid.label:12s} {tag:12s} multiplicity {alignment_multiplicity(cid)}")

# multiplicity counts how many ways a shape can be laid over itself while
# respecting which nodes are interchangeable. A triangle has 6: any of the
# three corners can go first and the other two can swap.
triangle = Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c")])
tri_id, _ = canonize(encode_graphlet(triangle, (0, 1, 2)))
print()
print("triangle", tri_id.label, "multiplicity", alignment_multiplicity(tri_id))

# a 5-node star: the hub is fixed but the four leaves permute freely
star = Graph.from_edges([("h", "l1"), ("h", "l2"), ("h", "l3"), ("h", "l4")])
star_id, _ = canonize(encode_graphlet(star, (0, 1, 2, 3, 4)))
print("5-star  ", star_id.label, "multiplicity", alignment_multiplicity(star_id))

# canonical ids ignore node order entirely: encode the same triangle with
# its nodes listed in every rotation and the id never moves
for order in ((0, 1, 2), (2, 0, 1), (1, 2, 0)):
    same_id, _ = canonize(encode_graphlet(triangle, order))
    assert same_id == tri_id
print("triangle id is order-independent")
