"""Deterministic index of unambiguous k-graphlets.

Every node roots one depth-first expansion. At each step only neighbors
holding the D largest distinct degree values are followed, after deferring up
to k-1-c of the highest-degree candidates (hubs get their chance as roots of
later, shallower expansions instead of exploding the branching here). Leaves
whose canonical form has any symmetry are discarded; the rest are written in
canonical position order. The whole walk is a pure function of (graph,
params), so rebuilding an index is byte-identical.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import LocalignError
from .graphlets import (
    CanonicalGraphletId,
    canonize_bits,
    is_ambiguous,
    pair_order,
)
from .graphs import Graph

MIN_INDEX_K = 6


@dataclass(frozen=True)
class IndexParams:
    k: int = 8
    top_degrees: int = 2

    def __post_init__(self):
        if not MIN_INDEX_K <= self.k <= 8:
            raise ValueError(f"index graphlet size must be 6..8, got {self.k}")
        if self.top_degrees < 1:
            raise ValueError("top_degrees must be at least 1")


@dataclass(frozen=True)
class IndexEntry:
    graphlet: CanonicalGraphletId
    nodes: tuple[int, ...]


def expand_neighbors(g: Graph, nodes: list[int], params: IndexParams) -> list[int]:
    """Expansion candidates for the current node list, most promising first.

    Neighbors of the set (minus the set itself) are ranked by degree. The
    h = max(0, min(k-1-c, |neighs|-D)) highest-degree candidates are deferred,
    lowest ids first inside an equal-degree run. The D largest distinct degree
    values among the survivors are then selected, and every neighbor holding
    one of those values is returned, deferred or not: a degree class is either
    followed wholly or deferred wholly, so only values above the surviving
    range are actually postponed. Result ordered by descending degree then
    ascending id.
    """
    adj = g.adj
    inside = set(nodes)
    by_degree: dict[int, list[int]] = {}
    total = 0
    for v in nodes:
        for u in adj[v]:
            if u not in inside:
                inside.add(u)
                d = len(adj[u])
                klass = by_degree.get(d)
                if klass is None:
                    by_degree[d] = [u]
                else:
                    klass.append(u)
                total += 1
    if not total:
        return []
    c = len(nodes)
    h = max(0, min(params.k - 1 - c, total - params.top_degrees))
    out: list[int] = []
    kept = 0
    for d in sorted(by_degree, reverse=True):
        klass = by_degree[d]
        if h >= len(klass):
            h -= len(klass)
            continue
        h = 0
        out.extend(sorted(klass))
        kept += 1
        if kept == params.top_degrees:
            break
    return out


def _leaf_entry(g: Graph, params: IndexParams,
                nodes: list[int]) -> IndexEntry | None:
    """Entry for a full node list, or None when its graphlet has symmetry.

    The expansion only ever hands over distinct nodes inducing a connected
    subgraph, so the validating encoder is skipped here. The result depends
    only on the node set: canonical ordering erases the discovery order.
    """
    k = params.k
    pairs = pair_order(k)
    L = len(pairs)
    bits = 0
    for a, (i, j) in enumerate(pairs):
        if g.has_edge(nodes[i], nodes[j]):
            bits |= 1 << (L - 1 - a)
    value, perm = canonize_bits(k, bits)
    cid = CanonicalGraphletId(k, value)
    if is_ambiguous(cid):
        return None
    ordered = [0] * k
    for i, v in enumerate(nodes):
        ordered[perm[i]] = v
    return IndexEntry(cid, tuple(ordered))


def expand(g: Graph, params: IndexParams, nodes: list[int],
           emit: Callable[[IndexEntry], None], stats: dict | None = None,
           memo: dict | None = None) -> None:
    """Recursive expansion step; emits entries for unambiguous leaves.

    memo (optional) caches work by sorted node tuple: full-size keys hold the
    ready entry (or None), shorter keys the expansion candidates. Both depend
    only on the node set, so a set reached along several orders is processed
    once. Emission still happens per visit: the memo changes no output, only
    repeated work.
    """
    if len(nodes) == params.k:
        if stats is not None:
            stats["leaves"] = stats.get("leaves", 0) + 1
        if memo is None:
            entry = _leaf_entry(g, params, nodes)
        else:
            key = tuple(sorted(nodes))
            try:
                entry = memo[key]
            except KeyError:
                entry = memo[key] = _leaf_entry(g, params, nodes)
        if entry is not None:
            emit(entry)
        return
    if memo is None or len(nodes) == 1:
        candidates = expand_neighbors(g, nodes, params)
    else:
        key = tuple(sorted(nodes))
        try:
            candidates = memo[key]
        except KeyError:
            candidates = memo[key] = expand_neighbors(g, nodes, params)
    if stats is not None and len(candidates) > stats.get("max_expansion", 0):
        stats["max_expansion"] = len(candidates)
    for u in candidates:
        nodes.append(u)
        expand(g, params, nodes, emit, stats, memo)
        nodes.pop()


def _root_entries(g: Graph, params: IndexParams, root: int,
                  stats: dict | None, memo: dict) -> list[IndexEntry]:
    out: list[IndexEntry] = []
    expand(g, params, [root], out.append, stats, memo)
    return out


def create_index(g: Graph, params: IndexParams, threads: int = 1,
                 stats: list | None = None) -> list[IndexEntry]:
    """Index every root in descending-degree order (ties by ascending id).

    Duplicate entries reachable from several roots are kept; readers dedup.
    With threads > 1 the roots run on a thread pool and results are
    concatenated in root order, so the output is unchanged.
    """
    roots = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    per_root = [dict() for _ in roots] if stats is not None else [None] * len(roots)
    memo: dict[tuple[int, ...], IndexEntry | None] = {}
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(
                lambda args: _root_entries(g, params, *args, memo),
                zip(roots, per_root)))
    else:
        chunks = [_root_entries(g, params, r, s, memo)
                  for r, s in zip(roots, per_root)]
    if stats is not None:
        stats.extend(per_root)
    entries: list[IndexEntry] = []
    for chunk in chunks:
        entries.extend(chunk)
    return entries


def write_index(entries: Iterable[IndexEntry], g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for e in entries:
            fh.write(e.graphlet.label)
            for v in e.nodes:
                fh.write(f" {g.labels[v]}")
            fh.write("\n")


def read_index(path: str, g: Graph) -> list[IndexEntry]:
    """Parse an index file back into entries against the given graph."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            toks = line.split()
            try:
                cid = CanonicalGraphletId.from_label(toks[0])
                nodes = tuple(g.id_of(s) for s in toks[1:])
            except (ValueError, KeyError) as e:
                raise LocalignError(f"{path}:{lineno}: {e}") from None
            if len(nodes) != cid.k:
                raise LocalignError(
                    f"{path}:{lineno}: expected {cid.k} nodes, got {len(nodes)}")
            out.append(IndexEntry(cid, nodes))
    return out
