from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from localign.aligning import SeedAlignment
from localign.errors import LocalignError
from localign.generate import preferential_attachment
from localign.graphlets import GraphletEncoding, canonize, orbits
from localign.graphs import Graph
from localign.odv import (
    alignment_mean_odv,
    compute_odv,
    load_weights,
    odv_similarity,
    orbit_count,
    read_odv,
    uniform_weights,
    write_odv,
)
from localign.odv import _registry


def _brute_odv(g, max_size):
    """Count orbit participation by trying every node subset outright."""
    reg = _registry(max_size)
    rows = np.zeros((g.n, reg.total), dtype=np.int64)
    for u, v in g.edge_list:
        rows[u][0] += 1
        rows[v][0] += 1
    for s in range(3, max_size + 1):
        for combo in itertools.combinations(range(g.n), s):
            if not _connected(g, combo):
                continue
            bits = 0
            for i in range(s):
                for j in range(i + 1, s):
                    bits = bits << 1 | g.has_edge(combo[i], combo[j])
            cid, perm = canonize(GraphletEncoding(s, bits, combo))
            part = orbits(cid)
            base = reg.base[(s, cid.value)]
            for i, node in enumerate(combo):
                rows[node][base + part.orbit_of[perm[i]]] += 1
    return rows


def _connected(g, combo):
    inside = set(combo)
    seen = {combo[0]}
    frontier = [combo[0]]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if w in inside and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen) == len(combo)


def _gnp(n, p, seed):
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < p]
    return Graph([str(i) for i in range(n)], edges)


def test_orbit_totals():
    assert orbit_count(4) == 15
    assert orbit_count(5) == 73
    with pytest.raises(ValueError):
        orbit_count(3)
    with pytest.raises(ValueError):
        compute_odv(Graph(["a", "b"], [(0, 1)]), max_size=6)


def test_single_edge_counts_only_degree():
    g = Graph(["a", "b"], [(0, 1)])
    table = compute_odv(g, max_size=4)
    expect = np.zeros((2, 15), dtype=np.int64)
    expect[:, 0] = 1
    assert (table == expect).all()


def test_triangle_counts():
    g = Graph(["a", "b", "c"], [(0, 1), (0, 2), (1, 2)])
    table = compute_odv(g, max_size=4)
    for v in range(3):
        row = list(table[v])
        assert row[0] == 2
        assert row[1] == 0 and row[2] == 0
        assert row[3] == 1
        assert not any(row[4:])


def test_column_zero_is_degree():
    g = preferential_attachment(80, 3, seed=2)
    table = compute_odv(g, max_size=4)
    assert all(table[v][0] == g.degree(v) for v in range(g.n))


def test_vertex_transitive_rows_identical():
    cycle = Graph([str(i) for i in range(8)],
                  [(i, (i + 1) % 8) for i in range(8)])
    k5 = Graph([str(i) for i in range(5)],
               [(i, j) for i in range(5) for j in range(i + 1, 5)])
    for g in (cycle, k5):
        for size in (4, 5):
            table = compute_odv(g, max_size=size)
            assert (table == table[0]).all()


def test_enumeration_matches_brute_force():
    for seed in range(4):
        g = _gnp(12, 0.3, seed)
        for size in (4, 5):
            assert (compute_odv(g, size) == _brute_odv(g, size)).all()


def test_subset_totals_per_size():
    # each connected s-subset contributes exactly s orbit increments
    g = _gnp(14, 0.25, 9)
    table = compute_odv(g, max_size=4)
    reg = _registry(4)
    for s in (3, 4):
        subsets = sum(1 for combo in itertools.combinations(range(g.n), s)
                      if _connected(g, combo))
        lo = min(b for (sz, _), b in reg.base.items() if sz == s)
        hi = reg.total if s == 4 else min(
            b for (sz, _), b in reg.base.items() if sz == 4)
        assert int(table[:, lo:hi].sum()) == s * subsets


def test_similarity_identity_and_symmetry():
    rng = random.Random(31)
    for _ in range(200):
        u = np.array([rng.randrange(50) for _ in range(15)])
        v = np.array([rng.randrange(50) for _ in range(15)])
        s = odv_similarity(u, v)
        assert 0.0 <= s <= 1.0
        assert s == odv_similarity(v, u)
        assert odv_similarity(u, u) == 1.0


def test_similarity_matches_formula_with_weights():
    u = np.array([3, 0, 7])
    v = np.array([1, 0, 9])
    w = np.array([0.5, 1.0, 0.25])
    gaps = [abs(np.log(a + 1) - np.log(b + 1)) / np.log(max(a, b) + 2)
            for a, b in zip(u, v)]
    expect = 1.0 - sum(wi * gi for wi, gi in zip(w, gaps)) / w.sum()
    assert odv_similarity(u, v, w) == pytest.approx(expect, abs=1e-12)


def test_similarity_rejects_length_mismatch():
    with pytest.raises(ValueError):
        odv_similarity(np.zeros(15), np.zeros(14))
    with pytest.raises(ValueError):
        odv_similarity(np.zeros(4), np.zeros(4), weights=np.ones(5))


def test_zero_vectors_are_perfectly_similar():
    assert odv_similarity(np.zeros(15), np.zeros(15)) == 1.0


def test_mean_odv_matches_recomputation():
    g1 = _gnp(16, 0.3, 5)
    g2 = _gnp(16, 0.3, 6)
    t1 = compute_odv(g1, 4)
    t2 = compute_odv(g2, 4)
    rng = random.Random(8)
    lefts = rng.sample(range(g1.n), 5)
    rights = rng.sample(range(g2.n), 5)
    seed = SeedAlignment(pairs=list(zip(lefts, rights)), source_key="x")
    expect = sum(odv_similarity(t1[u], t2[v]) for u, v in seed.pairs) / 5
    assert alignment_mean_odv(seed, t1, t2) == pytest.approx(expect, abs=1e-15)


def test_mean_odv_of_self_alignment_is_one():
    g = _gnp(16, 0.3, 7)
    t = compute_odv(g, 4)
    seed = SeedAlignment(pairs=[(v, v) for v in range(6)], source_key="x")
    assert alignment_mean_odv(seed, t, t) == 1.0


def test_mean_odv_rejects_empty_seed():
    t = np.zeros((3, 15))
    with pytest.raises(ValueError):
        alignment_mean_odv(SeedAlignment(pairs=[], source_key="x"), t, t)


def test_odv_file_round_trip(tmp_path):
    g = _gnp(20, 0.2, 12)
    table = compute_odv(g, 4)
    path = tmp_path / "g.odv"
    write_odv(g, table, str(path))
    assert (read_odv(str(path), g) == table).all()


def test_odv_file_validation(tmp_path):
    g = Graph(["a", "b"], [(0, 1)])
    bad = tmp_path / "bad.odv"
    bad.write_text("a 1 2 3\nzzz 1 2 3\n")
    with pytest.raises(LocalignError, match="bad.odv:2"):
        read_odv(str(bad), g)
    ragged = tmp_path / "ragged.odv"
    ragged.write_text("a 1 2 3\nb 1 2\n")
    with pytest.raises(LocalignError, match="ragged.odv:2"):
        read_odv(str(ragged), g)
    partial = tmp_path / "partial.odv"
    partial.write_text("a 1 2 3\n")
    with pytest.raises(LocalignError, match="1 of 2"):
        read_odv(str(partial), g)


def test_weight_file_loading(tmp_path):
    path = tmp_path / "w.txt"
    path.write_text("# comment\n0.5\n1.0\n0.25\n")
    got = load_weights(str(path), 3)
    assert got.tolist() == [0.5, 1.0, 0.25]
    with pytest.raises(LocalignError):
        load_weights(str(path), 4)
    bad = tmp_path / "bad.txt"
    bad.write_text("0.0\n")
    with pytest.raises(LocalignError, match="outside"):
        load_weights(str(bad), 1)
    assert uniform_weights(15).tolist() == [1.0] * 15
