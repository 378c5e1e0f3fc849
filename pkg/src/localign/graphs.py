"""Undirected graph container and edge-list plumbing.

Nodes carry arbitrary string labels which are interned to dense integer ids in
first-appearance order. All algorithms in this package work on the ids; labels
only matter at file boundaries.
"""

from __future__ import annotations

import logging
import random
from typing import Iterable, Iterator, Sequence

from .errors import GraphFormatError

log = logging.getLogger(__name__)


class Graph:
    """Immutable undirected graph without self-loops or parallel edges."""

    __slots__ = (
        "labels",
        "label_ids",
        "adj",
        "edge_list",
        "_edge_keys",
        "dropped_self_loops",
        "dropped_duplicates",
    )

    def __init__(self, labels: Sequence[str], edges: Iterable[tuple[int, int]],
                 dropped_self_loops: int = 0, dropped_duplicates: int = 0):
        self.labels = list(labels)
        self.label_ids = {s: i for i, s in enumerate(self.labels)}
        if len(self.label_ids) != len(self.labels):
            raise ValueError("duplicate node labels")
        n = len(self.labels)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        edge_list = []
        keys = set()
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad edge ({u}, {v})")
            if u > v:
                u, v = v, u
            key = (u << 32) | v
            if key in keys:
                raise ValueError(f"duplicate edge ({u}, {v})")
            keys.add(key)
            edge_list.append((u, v))
            nbrs[u].append(v)
            nbrs[v].append(u)
        edge_list.sort()
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in nbrs)
        self.edge_list: tuple[tuple[int, int], ...] = tuple(edge_list)
        self._edge_keys = keys
        self.dropped_self_loops = dropped_self_loops
        self.dropped_duplicates = dropped_duplicates

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple[str, str]],
                   extra_labels: Iterable[str] = ()) -> "Graph":
        """Build a graph from labeled edges, dropping self-loops and duplicates.

        extra_labels forces nodes into the graph even if no surviving edge
        touches them (used to keep perturbed graphs on the full node set).
        """
        labels: list[str] = []
        ids: dict[str, int] = {}

        def intern(s: str) -> int:
            i = ids.get(s)
            if i is None:
                i = len(labels)
                ids[s] = i
                labels.append(s)
            return i

        edges = []
        seen = set()
        loops = dupes = 0
        for a, b in pairs:
            if a == b:
                loops += 1
                intern(a)
                continue
            u, v = intern(a), intern(b)
            key = (min(u, v) << 32) | max(u, v)
            if key in seen:
                dupes += 1
                continue
            seen.add(key)
            edges.append((u, v))
        for s in extra_labels:
            intern(s)
        if loops or dupes:
            log.debug("dropped %d self-loops and %d duplicate edges", loops, dupes)
        return cls(labels, edges, dropped_self_loops=loops, dropped_duplicates=dupes)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edge_list)

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adj[u]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return ((u << 32) | v) in self._edge_keys

    def id_of(self, label: str) -> int:
        try:
            return self.label_ids[label]
        except KeyError:
            raise KeyError(f"unknown node label {label!r}") from None

    def edges(self) -> Iterator[tuple[int, int]]:
        return iter(self.edge_list)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _edge_tokens(path: str, want: int) -> Iterator[tuple[int, list[str]]]:
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            if len(toks) != want:
                raise GraphFormatError(
                    f"{path}:{lineno}: expected {want} fields, got {len(toks)}")
            yield lineno, toks


def load_edge_list(path: str) -> Graph:
    """Read a whitespace-separated "u v" edge list. '#' starts a comment."""
    return Graph.from_edges((a, b) for _, (a, b) in _edge_tokens(path, 2))


def save_edge_list(g: Graph, path: str) -> None:
    """Write edges as "u v" lines in id order. Isolated nodes are not written."""
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in g.edges():
            fh.write(f"{g.labels[u]} {g.labels[v]}\n")


def perturb_edges(g: Graph, fraction: float, rng_seed: int) -> tuple[Graph, list[tuple[str, str]]]:
    """Remove floor(fraction * m) edges uniformly without replacement.

    The node set is preserved, so nodes isolated by the removal stay in the
    returned graph. Returns the perturbed graph and the removed labeled edges.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValueError("fraction must be within [0, 1]")
    count = int(fraction * g.m)
    rng = random.Random(rng_seed)
    doomed = set(rng.sample(range(g.m), count)) if count else set()
    kept = []
    removed = []
    for i, (u, v) in enumerate(g.edges()):
        if i in doomed:
            removed.append((g.labels[u], g.labels[v]))
        else:
            kept.append((u, v))
    return Graph(g.labels, kept), removed


def degree_stats(g: Graph) -> list[tuple[int, int]]:
    """Histogram of node degrees as (degree, count) rows, degree ascending."""
    counts: dict[int, int] = {}
    for u in range(g.n):
        d = g.degree(u)
        counts[d] = counts.get(d, 0) + 1
    return sorted(counts.items())


def write_degree_stats(g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("degree,count\n")
        for d, c in degree_stats(g):
            fh.write(f"{d},{c}\n")
