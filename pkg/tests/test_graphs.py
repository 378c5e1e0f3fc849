from __future__ import annotations

import random

import pytest

from localign.errors import GraphFormatError
from localign.graphs import (
    Graph,
    degree_stats,
    load_edge_list,
    perturb_edges,
    save_edge_list,
    write_degree_stats,
)


def _random_graph(rng, n, p):
    pairs = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                pairs.append((f"n{u}", f"n{v}"))
    return Graph.from_edges(pairs), pairs


def test_interning_first_appearance_order():
    g = Graph.from_edges([("b", "a"), ("c", "a"), ("d", "c")])
    assert g.labels == ["b", "a", "c", "d"]
    assert g.id_of("c") == 2
    assert g.n == 4 and g.m == 3


def test_adjacency_against_naive_oracle():
    rng = random.Random(7)
    g, pairs = _random_graph(rng, 40, 0.12)
    naive: dict[str, set[str]] = {}
    for a, b in pairs:
        naive.setdefault(a, set()).add(b)
        naive.setdefault(b, set()).add(a)
    for label, nbrs in naive.items():
        u = g.id_of(label)
        assert g.degree(u) == len(nbrs)
        assert {g.labels[v] for v in g.neighbors(u)} == nbrs
        for other in nbrs:
            assert g.has_edge(u, g.id_of(other))
            assert g.has_edge(g.id_of(other), u)
    assert not g.has_edge(0, 0) if g.n else True


def test_self_loops_and_duplicates_dropped_with_counts():
    g = Graph.from_edges([("a", "b"), ("b", "a"), ("a", "a"), ("a", "b"), ("b", "c")])
    assert g.m == 2
    assert g.dropped_self_loops == 1
    assert g.dropped_duplicates == 2


def test_edge_list_round_trip(tmp_path):
    path = tmp_path / "toy.el"
    path.write_text("# a comment line\n\na b\nb c # trailing comment\nc d\n")
    g = load_edge_list(str(path))
    assert g.m == 3 and g.n == 4
    out = tmp_path / "copy.el"
    save_edge_list(g, str(out))
    g2 = load_edge_list(str(out))
    assert g2.labels == g.labels
    assert list(g2.edges()) == list(g.edges())


def test_malformed_line_raises_with_location(tmp_path):
    path = tmp_path / "bad.el"
    path.write_text("a b\na b c\n")
    with pytest.raises(GraphFormatError, match="bad.el:2"):
        load_edge_list(str(path))


def test_perturb_counts_and_determinism():
    rng = random.Random(3)
    g, _ = _random_graph(rng, 30, 0.2)
    frac = 0.1
    p1, removed1 = perturb_edges(g, frac, rng_seed=11)
    p2, removed2 = perturb_edges(g, frac, rng_seed=11)
    p3, removed3 = perturb_edges(g, frac, rng_seed=12)
    assert removed1 == removed2
    assert list(p1.edges()) == list(p2.edges())
    assert removed1 != removed3
    assert len(removed1) == int(frac * g.m)
    assert p1.m == g.m - len(removed1)
    assert p1.labels == g.labels
    for a, b in removed1:
        assert not p1.has_edge(p1.id_of(a), p1.id_of(b))
        assert g.has_edge(g.id_of(a), g.id_of(b))


def test_perturb_keeps_isolated_nodes():
    g = Graph.from_edges([("a", "b")])
    p, removed = perturb_edges(g, 1.0, rng_seed=0)
    assert removed == [("a", "b")]
    assert p.n == 2 and p.m == 0


def test_degree_stats_histogram(tmp_path):
    g = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("b", "d")])
    stats = degree_stats(g)
    assert stats == [(1, 1), (2, 2), (3, 1)]
    assert sum(c for _, c in stats) == g.n
    out = tmp_path / "deg.csv"
    write_degree_stats(g, str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "degree,count"
    assert lines[1:] == ["1,1", "2,2", "3,1"]
