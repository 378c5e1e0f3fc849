"""Seeded synthetic graphs for experiments and tests."""

from __future__ import annotations

import random

from .graphs import Graph


def preferential_attachment(n: int, edges_per_node: int, seed: int) -> Graph:
    """Scale-free graph grown by preferential attachment.

    Starts from edges_per_node isolated nodes; each new node attaches to that
    many distinct existing nodes, chosen proportionally to current degree via
    the repeated-endpoints trick. Mean degree approaches 2 * edges_per_node.
    """
    if edges_per_node < 1 or n <= edges_per_node:
        raise ValueError("need n > edges_per_node >= 1")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    endpoints: list[int] = []
    targets = list(range(edges_per_node))
    for v in range(edges_per_node, n):
        for t in targets:
            edges.append((t, v))
        endpoints.extend(targets)
        endpoints.extend([v] * edges_per_node)
        chosen: set[int] = set()
        while len(chosen) < edges_per_node:
            chosen.add(rng.choice(endpoints))
        targets = sorted(chosen)
    return Graph([str(i) for i in range(n)], edges)
