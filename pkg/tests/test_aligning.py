from __future__ import annotations

from fractions import Fraction

import pytest

from localign.aligning import (
    PatchedGraphlet,
    SeedAlignment,
    align_nodes,
    find_aligned_pairs,
    patch_index,
    read_seeds,
    specificity_bound,
    write_seeds,
)
from localign.errors import LocalignError
from localign.generate import preferential_attachment
from localign.graphlets import CanonicalGraphletId
from localign.graphs import Graph
from localign.indexing import IndexEntry, IndexParams, create_index


def _entry(k, value, nodes):
    return IndexEntry(CanonicalGraphletId(k, value), tuple(nodes))


def _indexed_pa_graph(n=60, seed=7):
    g = preferential_attachment(n, 3, seed=seed)
    entries = create_index(g, IndexParams(k=6, top_degrees=2))
    return g, entries


def test_disjoint_adjacent_lines_make_no_patch():
    g = Graph([str(i) for i in range(12)],
              [(i, i + 1) for i in range(5)] + [(i, i + 1) for i in range(6, 11)])
    a = _entry(6, 1, range(6))
    b = _entry(6, 1, range(6, 12))
    assert patch_index([a, b], g) == {}


def test_identical_adjacent_lines_overlap_everywhere():
    g = Graph([str(i) for i in range(6)], [(i, i + 1) for i in range(5)])
    a = _entry(6, 5, range(6))
    patched = patch_index([a, a], g)
    assert len(patched) == 1
    (patch,) = next(iter(patched.values()))
    assert patch.overlap == [(i, i) for i in range(6)]
    assert patch.cross_edges == []
    assert len(patch.nodes) == 6


def test_one_shared_node_patches_to_fifteen():
    g = Graph([str(i) for i in range(15)], [(i, i + 1) for i in range(14)])
    a = _entry(8, 3, range(8))
    b = _entry(8, 3, [7] + list(range(8, 15)))
    patched = patch_index([a, b], g)
    (patch,) = next(iter(patched.values()))
    assert len(patch.nodes) == 15
    assert patch.overlap == [(7, 0)]
    # nodes 7 and 8 are adjacent but 7 is shared, so that edge lives inside
    # the constituents rather than the cross list
    assert patch.cross_edges == []


def test_cross_edges_between_exclusive_halves():
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 4)]
    g = Graph([str(i) for i in range(5)], edges)
    a = _entry(3, 3, (0, 1, 2))
    b = _entry(3, 3, (2, 3, 4))
    patched = patch_index([a, b], g)
    (patch,) = next(iter(patched.values()))
    # exclusive halves are {0,1} and {3,4}; the graph has 0-4 and 1-4
    assert patch.cross_edges == [(0, 2), (1, 2)]


def test_duplicate_lines_collapse_to_one_member():
    g = Graph([str(i) for i in range(7)], [(i, i + 1) for i in range(6)])
    a = _entry(6, 9, range(6))
    b = _entry(6, 9, range(1, 7))
    patched = patch_index([a, b, a, b], g)
    # the middle (b, a) pair reverses constituent order and gets its own key
    ab = PatchedGraphlet(a, b, g)
    ba = PatchedGraphlet(b, a, g)
    assert ab.key != ba.key
    assert set(patched) == {ab.key, ba.key}
    assert len(patched[ab.key]) == 1
    assert len(patched[ba.key]) == 1


def test_key_separates_overlap_structure():
    g = Graph([str(i) for i in range(9)], [(i, i + 1) for i in range(8)])
    same_value = 17
    one = PatchedGraphlet(_entry(6, same_value, range(6)),
                          _entry(6, same_value, range(5, 11 - 2)), g)
    two = PatchedGraphlet(_entry(6, same_value, range(6)),
                          _entry(6, same_value, range(4, 10 - 2)), g)
    assert one.key != two.key


def test_align_nodes_identity_on_itself():
    g, entries = _indexed_pa_graph(40)
    patched = patch_index(entries, g)
    some = next(iter(patched[min(patched)]))
    seed = align_nodes(some, some)
    assert all(u == v for u, v in seed.pairs)
    assert len(seed.pairs) == len(some.nodes)


def test_align_nodes_rejects_key_mismatch():
    g = Graph([str(i) for i in range(7)], [(i, i + 1) for i in range(6)])
    one = PatchedGraphlet(_entry(6, 9, range(6)), _entry(6, 9, range(1, 7)), g)
    other = PatchedGraphlet(_entry(6, 10, range(6)), _entry(6, 9, range(1, 7)), g)
    with pytest.raises(ValueError):
        align_nodes(one, other)


def test_self_alignment_of_identical_graphs():
    g, entries = _indexed_pa_graph(50, seed=3)
    patched = patch_index(entries, g)
    seeds = find_aligned_pairs(patched, patched)
    assert seeds, "expected at least one doubly-unique key"
    for s in seeds:
        assert all(u == v for u, v in s.pairs)
        assert 6 <= len(s.pairs) <= 11


def test_seeds_are_isomorphisms():
    # relabel one graph by reversing ids; indexes are rebuilt independently,
    # and every emitted seed must still map edges to edges both ways
    g1 = preferential_attachment(55, 3, seed=11)
    n = g1.n
    perm = {u: n - 1 - u for u in range(n)}
    g2 = Graph([f"w{i}" for i in range(n)],
               sorted((min(perm[u], perm[v]), max(perm[u], perm[v]))
                      for u, v in g1.edge_list))
    params = IndexParams(k=6, top_degrees=2)
    p1 = patch_index(create_index(g1, params), g1)
    p2 = patch_index(create_index(g2, params), g2)
    seeds = find_aligned_pairs(p1, p2)
    assert seeds
    for s in seeds:
        mapping = dict(s.pairs)
        nodes = list(mapping)
        for i, u in enumerate(nodes):
            for w in nodes[i + 1:]:
                assert g1.has_edge(u, w) == g2.has_edge(mapping[u], mapping[w])


def test_non_unique_keys_are_skipped():
    g = Graph([str(i) for i in range(8)], [(i, i + 1) for i in range(7)])
    a = PatchedGraphlet(_entry(6, 9, range(6)), _entry(6, 9, range(1, 7)), g)
    b = PatchedGraphlet(_entry(6, 9, range(1, 7)), _entry(6, 9, range(2, 8)), g)
    assert a.key == b.key
    both = {a.key: {a, b}}
    just_one = {a.key: {a}}
    assert find_aligned_pairs(both, just_one) == []
    assert find_aligned_pairs(just_one, both) == []
    assert find_aligned_pairs({}, just_one) == []
    assert len(find_aligned_pairs(just_one, just_one)) == 1


def test_specificity_bound_values():
    assert specificity_bound(1, 1) == 1
    assert specificity_bound(2, 3) == Fraction(1, 3)
    assert specificity_bound(10, 10) == Fraction(1, 10)
    assert isinstance(specificity_bound(2, 3), Fraction)
    with pytest.raises(ValueError):
        specificity_bound(0, 4)
    with pytest.raises(ValueError):
        specificity_bound(4, 0)


def test_seed_pairs_must_be_one_to_one():
    with pytest.raises(ValueError):
        SeedAlignment(pairs=[(0, 1), (0, 2)], source_key="x")
    with pytest.raises(ValueError):
        SeedAlignment(pairs=[(0, 1), (2, 1)], source_key="x")


def test_seed_file_round_trip(tmp_path):
    g1 = preferential_attachment(45, 3, seed=5)
    g2 = preferential_attachment(45, 3, seed=6)
    params = IndexParams(k=6, top_degrees=2)
    seeds = find_aligned_pairs(patch_index(create_index(g1, params), g1),
                               patch_index(create_index(g2, params), g2))
    path = tmp_path / "seeds.tsv"
    write_seeds(seeds, g1, g2, str(path))
    again = read_seeds(str(path), g1, g2)
    assert [(s.source_key, s.pairs) for s in again] == \
           [(s.source_key, s.pairs) for s in seeds]
    text = path.read_text()
    write_seeds(again, g1, g2, str(path))
    assert path.read_text() == text


def test_seed_file_rejects_unknown_label(tmp_path):
    g = Graph(["a", "b"], [(0, 1)])
    path = tmp_path / "bad.tsv"
    path.write_text("P|k6:01|k6:01|ov:0-0|xe:\ta:zzz\n")
    with pytest.raises(LocalignError, match="bad.tsv:1"):
        read_seeds(str(path), g, g)
