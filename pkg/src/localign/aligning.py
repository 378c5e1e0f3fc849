"""Patch adjacent index entries and align doubly-unique patches across graphs.

Two consecutive index lines that share at least one node are glued into a
patched graphlet of 2k - |overlap| nodes. Each patch is keyed by a string
recording the constituent canonical ids, which canonical positions coincide,
and which extra graph edges run between the exclusive parts. The key is
deliberately not canonized across the patched shape; it remembers the order
the builder walked in, which is what makes rare keys rare. A key held by
exactly one patch in each graph pins down a node-for-node correspondence
with no guessing, and those correspondences are the seeds everything
downstream grows from.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import LocalignError
from .graphs import Graph
from .indexing import IndexEntry


def _render_pairs(pairs: Sequence[tuple[int, int]]) -> str:
    return ",".join(f"{a}-{b}" for a, b in pairs)


class PatchedGraphlet:
    """Two overlapping index entries glued along their shared nodes."""

    __slots__ = ("first", "second", "overlap", "cross_edges", "nodes",
                 "key", "_node_sig")

    def __init__(self, first: IndexEntry, second: IndexEntry, g: Graph):
        pos1 = {v: i for i, v in enumerate(first.nodes)}
        pos2 = {v: i for i, v in enumerate(second.nodes)}
        shared = set(pos1) & set(pos2)
        if not shared:
            raise ValueError("patched entries must share at least one node")
        self.first = first
        self.second = second
        self.overlap = sorted((pos1[v], pos2[v]) for v in shared)
        cross = []
        for u in first.nodes:
            if u in shared:
                continue
            for v in second.nodes:
                if v not in shared and g.has_edge(u, v):
                    cross.append((pos1[u], pos2[v]))
        self.cross_edges = sorted(cross)
        self.nodes = list(first.nodes)
        self.nodes.extend(v for v in second.nodes if v not in pos1)
        self.key = (f"P|{first.graphlet.label}|{second.graphlet.label}"
                    f"|ov:{_render_pairs(self.overlap)}"
                    f"|xe:{_render_pairs(self.cross_edges)}")
        self._node_sig = tuple(sorted(self.nodes))

    # duplicate index lines produce byte-identical patches; set semantics on
    # (key, node set) keeps them from inflating the per-key member count
    def __eq__(self, other):
        if not isinstance(other, PatchedGraphlet):
            return NotImplemented
        return self.key == other.key and self._node_sig == other._node_sig

    def __hash__(self):
        return hash((self.key, self._node_sig))

    def __repr__(self):
        return f"PatchedGraphlet({self.key!r}, nodes={self.nodes})"


@dataclass
class SeedAlignment:
    """A small exact correspondence between nodes of two graphs."""

    pairs: list[tuple[int, int]]
    source_key: str

    def __post_init__(self):
        left = {u for u, _ in self.pairs}
        right = {v for _, v in self.pairs}
        if len(left) != len(self.pairs) or len(right) != len(self.pairs):
            raise ValueError("seed alignment pairs must be one-to-one")


def patch_index(entries: Sequence[IndexEntry],
                g: Graph) -> dict[str, set[PatchedGraphlet]]:
    """Glue each index line to the one after it wherever they share a node.

    Returns patches grouped by key. The graph is needed to find edges that
    run between the exclusive halves; the constituents already carry
    everything else.
    """
    out: dict[str, set[PatchedGraphlet]] = {}
    for a, b in zip(entries, entries[1:]):
        if not set(a.nodes) & set(b.nodes):
            continue
        patch = PatchedGraphlet(a, b, g)
        out.setdefault(patch.key, set()).add(patch)
    return out


def align_nodes(a: PatchedGraphlet, b: PatchedGraphlet) -> SeedAlignment:
    """Map a's nodes onto b's position-for-position.

    Canonical position i of a.first pairs with position i of b.first, and
    likewise for the second constituents. Equal keys guarantee the shared
    nodes land on consistent pairs, so the union is a function, and that the
    result maps every patched edge onto a patched edge.
    """
    if a.key != b.key:
        raise ValueError("cannot align patches with different keys")
    pairs: dict[tuple[int, int], None] = {}
    for u, v in zip(a.first.nodes, b.first.nodes):
        pairs[(u, v)] = None
    for u, v in zip(a.second.nodes, b.second.nodes):
        pairs[(u, v)] = None
    return SeedAlignment(pairs=list(pairs), source_key=a.key)


def find_aligned_pairs(index1: dict[str, set[PatchedGraphlet]],
                       index2: dict[str, set[PatchedGraphlet]],
                       ) -> list[SeedAlignment]:
    """Emit one seed per key that is unique on both sides.

    Keys are visited in sorted order so output files do not depend on dict
    history. Keys with any other multiplicity are skipped without touching
    their members.
    """
    seeds = []
    for key in sorted(index1.keys() | index2.keys()):
        mine = index1.get(key)
        theirs = index2.get(key)
        if mine is None or theirs is None:
            continue
        if len(mine) == 1 and len(theirs) == 1:
            seeds.append(align_nodes(next(iter(mine)), next(iter(theirs))))
    return seeds


def specificity_bound(n1: int, n2: int) -> Fraction:
    """Best possible correctness rate when a key has n1 and n2 members.

    With several members on either side any pairing is a guess; at most
    min(n1, n2) of the n1*n2 member pairings can be right.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("occurrence counts must be positive")
    return Fraction(min(n1, n2), n1 * n2)


def write_seeds(seeds: Iterable[SeedAlignment], g1: Graph, g2: Graph,
                path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in seeds:
            body = ",".join(f"{g1.labels[u]}:{g2.labels[v]}"
                            for u, v in s.pairs)
            fh.write(f"{s.source_key}\t{body}\n")


def read_seeds(path: str, g1: Graph, g2: Graph) -> list[SeedAlignment]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            try:
                key, body = line.split("\t")
                pairs = []
                for tok in body.split(","):
                    lu, lv = tok.split(":")
                    pairs.append((g1.id_of(lu), g2.id_of(lv)))
                out.append(SeedAlignment(pairs=pairs, source_key=key))
            except (ValueError, KeyError) as e:
                raise LocalignError(f"{path}:{lineno}: bad seed line ({e})")
    return out
