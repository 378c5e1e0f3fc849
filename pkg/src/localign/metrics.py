"""Alignment quality measures and alignment file handling.

An alignment here is a plain list of (node-in-G1, node-in-G2) id pairs,
one-to-one in both coordinates. Quality is judged three ways: edge
conservation (conserved edges over the union of induced edges), node
correctness against a ground-truth counterpart map, and a combined score
that multiplies size by the squares of both accuracies so that a small
correct alignment can outrank a large sloppy one.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import LocalignError
from .graphs import Graph

Pair = tuple[int, int]


def check_one_to_one(pairs: Sequence[Pair]) -> None:
    left = {u for u, _ in pairs}
    right = {v for _, v in pairs}
    if len(left) != len(pairs) or len(right) != len(pairs):
        raise ValueError("alignment is not one-to-one")


def conserved_counts(pairs: Sequence[Pair], g1: Graph,
                     g2: Graph) -> tuple[int, int, int]:
    """(conserved, induced-in-G1, induced-in-G2) edge counts."""
    forward = dict(pairs)
    aligned2 = set(forward.values())
    c = e1 = 0
    for u, w in g1.edge_list:
        if u in forward and w in forward:
            e1 += 1
            if g2.has_edge(forward[u], forward[w]):
                c += 1
    e2 = sum(1 for x, y in g2.edge_list if x in aligned2 and y in aligned2)
    return c, e1, e2


def s3_score(pairs: Sequence[Pair], g1: Graph, g2: Graph) -> float:
    """Conserved edges over the union of induced edges, 1.0 when no edges."""
    c, e1, e2 = conserved_counts(pairs, g1, g2)
    den = e1 + e2 - c
    return 1.0 if den == 0 else c / den


def identity_truth(g1: Graph, g2: Graph) -> dict[int, int]:
    """Counterpart map sending each node to the same label on the other side."""
    return {u: g2.label_ids[lab] for u, lab in enumerate(g1.labels)
            if lab in g2.label_ids}


def read_truth(path: str, g1: Graph, g2: Graph) -> dict[int, int]:
    """Two whitespace-separated labels per line, '#' comments allowed."""
    truth: dict[int, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if len(toks) != 2:
                raise LocalignError(f"{path}:{lineno}: expected two labels")
            try:
                u = g1.id_of(toks[0])
                v = g2.id_of(toks[1])
            except KeyError as e:
                raise LocalignError(f"{path}:{lineno}: unknown label {e}")
            truth[u] = v
    if len(set(truth.values())) != len(truth):
        raise LocalignError(f"{path}: counterpart map is not injective")
    return truth


def node_correctness(pairs: Sequence[Pair],
                     truth: Mapping[int, int]) -> float:
    """Fraction of pairs matching the counterpart map.

    Pairs whose first node has no counterpart entry count as wrong; use
    unknown_counterparts to see how many those were.
    """
    if not pairs:
        raise ValueError("alignment has no pairs")
    hit = sum(1 for u, v in pairs if truth.get(u) == v)
    return hit / len(pairs)


def unknown_counterparts(pairs: Sequence[Pair],
                         truth: Mapping[int, int]) -> int:
    return sum(1 for u, _ in pairs if u not in truth)


def alignment_score(size: int, nc: float, s3v: float) -> float:
    """Size discounted by both squared accuracies."""
    return size * nc * nc * s3v * s3v


def largest_connected_alignment(pairs: Sequence[Pair],
                                g1: Graph) -> list[Pair]:
    """Restrict to the component with the most pairs.

    Components are taken in the first graph's subgraph induced on the
    aligned nodes. A size tie goes to the component holding the smallest
    node id. The caller should recompute scores on the result; nothing is
    inherited.
    """
    if not pairs:
        return []
    inside = {u for u, _ in pairs}
    unvisited = set(inside)
    best: set[int] = set()
    while unvisited:
        start = min(unvisited)
        comp = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for w in g1.neighbors(u):
                    if w in inside and w not in comp:
                        comp.add(w)
                        nxt.append(w)
            frontier = nxt
        unvisited -= comp
        # components are discovered in ascending order of their smallest
        # node id, so keeping strict improvements settles ties the right way
        if len(comp) > len(best):
            best = comp
    return [(u, v) for u, v in pairs if u in best]


def write_alignment(pairs: Sequence[Pair], g1: Graph, g2: Graph, path: str,
                    header: Mapping[str, object] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for key, val in (header or {}).items():
            fh.write(f"# {key} {val}\n")
        for u, v in pairs:
            fh.write(f"{g1.labels[u]}\t{g2.labels[v]}\n")


def read_alignment(path: str, g1: Graph, g2: Graph) -> list[Pair]:
    pairs: list[Pair] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if len(toks) != 2:
                raise LocalignError(f"{path}:{lineno}: expected two labels")
            try:
                pairs.append((g1.id_of(toks[0]), g2.id_of(toks[1])))
            except KeyError as e:
                raise LocalignError(f"{path}:{lineno}: unknown label {e}")
    try:
        check_one_to_one(pairs)
    except ValueError as e:
        raise LocalignError(f"{path}: {e}")
    return pairs
