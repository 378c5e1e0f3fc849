"""
Aligning a graph with a noisy copy of itself
============================================

The full pipeline in library form. Take a scale-free graph, delete 2% of
its edges, and try to recover the correspondence from topology alone:
index both graphs, keep patterns that appear exactly once on each side,
and let a random walk over those seeds grow one large alignment whose
conserved-edge score never drops below a floor.
"""

from localign import (
    Graph,
    IndexParams,
    MergeParams,
    create_index,
    find_aligned_pairs,
    merge,
    node_correctness,
    patch_index,
    perturb_edges,
    preferential_attachment,
)

g1 = preferential_attachment(500, 4, seed=42)
g2, removed = perturb_edges(g1, 0.02, rng_seed=9)
print(f"g1: {g1.n} nodes {g1.m} edges; g2 lost {len(removed)} edges")

params = IndexParams(k=8, top_degrees=2)
idx1 = create_index(g1, params)
idx2 = create_index(g2, params)
print(f"indexes: {len(idx1)} and {len(idx2)} lines")

# consecutive index lines overlap; gluing each pair gives a bigger pattern
# with more nodes than a single line, hence far fewer accidental repeats
patches1 = patch_index(idx1, g1)
patches2 = patch_index(idx2, g2)
seeds = find_aligned_pairs(patches1, patches2)
print(f"{len(seeds)} seeds from patterns unique in both graphs")

sizes = sorted(len(s.pairs) for s in seeds)
print(f"seed sizes: min {sizes[0]}, median {sizes[len(sizes) // 2]}, max {sizes[-1]}")

# merge with the vector filter disabled (any value above 1 turns it off)
mp = MergeParams(odv_filter=1.1, min_s3=0.95, iterations=20000, rng_seed=3)
merged = merge(seeds, g1, g2, params=mp)
print(f"merged alignment: {merged.size} node pairs, score {merged.s3:.4f}")

# both graphs carry the original labels, so correctness can be read off
pairs = sorted(merged.forward.items())
truth = {lab: lab for lab in g1.labels}
labelled = [(g1.labels[u], g2.labels[v]) for u, v in pairs]
nc = node_correctness(labelled, truth)
print(f"node correctness against ground truth: {nc:.4f}")

# the walk is seeded, so the exact same alignment comes back on a rerun
again = merge(seeds, g1, g2, params=mp)
print("rerun identical:", sorted(again.forward.items()) == pairs)
