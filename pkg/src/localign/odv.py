"""Per-node orbit participation counts and the similarity built on them.

Each node gets a vector counting, for every orbit of every connected shape
with 2..max_size nodes, how many distinct induced subgraphs place the node
in that orbit. Column 0 belongs to the single 2-node shape, so it always
equals the degree. Orbits are numbered by shape size ascending, canonical id
ascending within a size, and smallest canonical position within a shape,
which gives 15 columns for max_size 4 and 73 for max_size 5.

The vectors feed a bounded similarity: log-scaled per-orbit differences,
weighted, averaged, subtracted from one. Seeds whose node pairs look alike
under this measure survive the pre-merge filter.
"""

from __future__ import annotations

import numpy as np

from .errors import LocalignError
from .graphs import Graph
from .graphlets import (
    GraphletEncoding,
    canonize,
    enumerate_connected_graphlets,
    orbits,
    pair_order,
)

_SIZES = (4, 5)
_registry_cache: dict[int, "_OrbitRegistry"] = {}


class _OrbitRegistry:
    """Global column numbering for all orbits up to a shape size."""

    def __init__(self, max_size: int):
        self.max_size = max_size
        self.base: dict[tuple[int, int], int] = {}
        total = 1
        for k in range(3, max_size + 1):
            for cid in enumerate_connected_graphlets(k):
                self.base[(k, cid.value)] = total
                total += orbits(cid).u
        self.total = total


def _registry(max_size: int) -> _OrbitRegistry:
    if max_size not in _SIZES:
        raise ValueError(f"max_size must be one of {_SIZES}, got {max_size}")
    reg = _registry_cache.get(max_size)
    if reg is None:
        reg = _OrbitRegistry(max_size)
        _registry_cache[max_size] = reg
    return reg


def orbit_count(max_size: int = 4) -> int:
    return _registry(max_size).total


def _columns_for(reg: _OrbitRegistry, memo: dict, s: int,
                 bits: int) -> tuple[int, ...]:
    cols = memo.get(bits)
    if cols is None:
        cid, perm = canonize(GraphletEncoding(s, bits, tuple(range(s))))
        part = orbits(cid)
        b = reg.base[(s, cid.value)]
        cols = tuple(b + part.orbit_of[perm[i]] for i in range(s))
        memo[bits] = cols
    return cols


def _count_size(g: Graph, s: int, rows: list[list[int]],
                reg: _OrbitRegistry) -> None:
    """Add orbit counts for all connected s-node subsets.

    Subsets are grown from their minimum node; a candidate may only attach
    through a node already inside, and a node adjacent to the current subset
    is claimed by the earliest branch that could reach it, so every subset
    appears exactly once. Induced adjacency bits are threaded through the
    recursion so each added node pays for its own pair checks only.
    """
    memo: dict[int, tuple[int, ...]] = {}
    neighbors = g.neighbors
    nbr_sets = [set(neighbors(v)) for v in range(g.n)]
    pairs = pair_order(s)
    L = len(pairs)
    pos = {ij: L - 1 - a for a, ij in enumerate(pairs)}
    last = s - 1
    lastbit = [1 << pos[i, last] for i in range(last)]
    sub: list[int] = []
    closed: set[int] = set()

    def grow(ext: list[int], bits: int, v0: int) -> None:
        d = len(sub)
        if d == last:
            for w in ext:
                b = bits
                wn = nbr_sets[w]
                for u, mask in zip(sub, lastbit):
                    if u in wn:
                        b |= mask
                cols = _columns_for(reg, memo, s, b)
                for node, col in zip(sub, cols):
                    rows[node][col] += 1
                rows[w][cols[last]] += 1
            return
        while ext:
            w = ext.pop()
            fresh = [u for u in neighbors(w) if u > v0 and u not in closed]
            closed.update(fresh)
            wb = bits
            wn = nbr_sets[w]
            for i in range(d):
                if sub[i] in wn:
                    wb |= 1 << pos[i, d]
            sub.append(w)
            grow(ext + fresh, wb, v0)
            sub.pop()
            closed.difference_update(fresh)

    for v0 in range(g.n):
        ext = [u for u in neighbors(v0) if u > v0]
        if not ext:
            continue
        sub.append(v0)
        closed.update(ext)
        closed.add(v0)
        grow(ext, 0, v0)
        sub.pop()
        closed.clear()


def compute_odv(g: Graph, max_size: int = 4) -> np.ndarray:
    """Orbit participation matrix, one row per node."""
    reg = _registry(max_size)
    rows = [[0] * reg.total for _ in range(g.n)]
    for u, v in g.edge_list:
        rows[u][0] += 1
        rows[v][0] += 1
    for s in range(3, max_size + 1):
        _count_size(g, s, rows, reg)
    return np.asarray(rows, dtype=np.int64)


def uniform_weights(count: int) -> np.ndarray:
    return np.ones(count, dtype=float)


def load_weights(path: str, count: int) -> np.ndarray:
    """One weight per line, in (0, 1], one line per orbit column."""
    vals = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                w = float(line)
            except ValueError:
                raise LocalignError(f"{path}:{lineno}: not a number: {line!r}")
            if not 0.0 < w <= 1.0:
                raise LocalignError(f"{path}:{lineno}: weight {w} outside (0, 1]")
            vals.append(w)
    if len(vals) != count:
        raise LocalignError(f"{path}: expected {count} weights, found {len(vals)}")
    return np.asarray(vals, dtype=float)


def odv_similarity(u_vec, v_vec, weights=None) -> float:
    """Similarity of two count vectors, in [0, 1], 1 meaning identical.

    Per column: the gap between log(count+1) values, normalised by
    log(max+2) so it stays below 1, scaled by the column weight. One minus
    the weighted average of the gaps is the similarity.
    """
    u = np.asarray(u_vec, dtype=float)
    v = np.asarray(v_vec, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"vector length mismatch: {u.shape} vs {v.shape}")
    w = uniform_weights(u.size) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != u.shape:
        raise ValueError(f"weight length mismatch: {w.shape} vs {u.shape}")
    gaps = np.abs(np.log(u + 1.0) - np.log(v + 1.0)) / np.log(np.maximum(u, v) + 2.0)
    return 1.0 - float(np.dot(w, gaps) / np.sum(w))


def alignment_mean_odv(seed, odv1: np.ndarray, odv2: np.ndarray,
                       weights=None) -> float:
    """Mean pairwise similarity over a seed's node pairs."""
    if not seed.pairs:
        raise ValueError("seed has no pairs")
    total = 0.0
    for u, v in seed.pairs:
        total += odv_similarity(odv1[u], odv2[v], weights)
    return total / len(seed.pairs)


def write_odv(g: Graph, table: np.ndarray, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for v in range(g.n):
            fh.write(g.labels[v])
            for c in table[v]:
                fh.write(f" {int(c)}")
            fh.write("\n")


def read_odv(path: str, g: Graph) -> np.ndarray:
    rows: dict[int, list[int]] = {}
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            toks = line.split()
            try:
                node = g.id_of(toks[0])
                counts = [int(t) for t in toks[1:]]
            except (KeyError, ValueError) as e:
                raise LocalignError(f"{path}:{lineno}: bad vector line ({e})")
            if width is None:
                width = len(counts)
            elif len(counts) != width:
                raise LocalignError(
                    f"{path}:{lineno}: expected {width} counts, found {len(counts)}")
            rows[node] = counts
    if len(rows) != g.n:
        raise LocalignError(f"{path}: vectors for {len(rows)} of {g.n} nodes")
    return np.asarray([rows[v] for v in range(g.n)], dtype=np.int64)
