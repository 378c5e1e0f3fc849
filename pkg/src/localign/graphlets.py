"""Canonical forms, orbits, and ambiguity for small connected subgraphs.

A graphlet on k nodes is encoded as the upper-triangular half of its adjacency
matrix, read row by row into a bit-string (most significant bit first). The
canonical id of a graphlet is the lexicographically least bit-string over all
k! orderings of its nodes, interpreted as an integer. Equal ids therefore mean
isomorphic graphlets, and no precomputed id tables need to ship with the code.

Canonization is brute force over all k! permutations, with the per-ordering
images assembled from precomputed partial-sum tables over short runs of bit
positions and memoized per encoding. A graphlet is ambiguous when some
nontrivial automorphism exists, i.e. when its positions fall into fewer than
k orbits.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DisconnectedGraphletError

MIN_K = 3
MAX_K = 8

_pair_cache: dict[int, list[tuple[int, int]]] = {}
_table_cache: dict[int, tuple[list[tuple[int, ...]], np.ndarray]] = {}
_sum_cache: dict[int, list[tuple[int, int, np.ndarray]]] = {}
_canon_memo: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
_orbit_memo: dict[tuple[int, int], "OrbitPartition"] = {}
_ambig_memo: dict[tuple[int, int], bool] = {}


def pair_order(k: int) -> list[tuple[int, int]]:
    """Position pairs (i, j), i < j, in the bit-string's row-major order."""
    pairs = _pair_cache.get(k)
    if pairs is None:
        pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
        _pair_cache[k] = pairs
    return pairs


def num_pairs(k: int) -> int:
    return k * (k - 1) // 2


@dataclass(frozen=True)
class GraphletEncoding:
    """An ordered node list plus the induced adjacency bits."""
    k: int
    bits: int
    nodes: tuple[int, ...]


@dataclass(frozen=True, order=True)
class CanonicalGraphletId:
    k: int
    value: int

    @property
    def label(self) -> str:
        return f"k{self.k}:{self.value:x}"

    @classmethod
    def from_label(cls, text: str) -> "CanonicalGraphletId":
        try:
            head, hexval = text.split(":", 1)
            if not head.startswith("k"):
                raise ValueError
            return cls(int(head[1:]), int(hexval, 16))
        except ValueError:
            raise ValueError(f"bad graphlet id {text!r}") from None

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class OrbitPartition:
    """orbit_of maps each canonical position to a dense orbit class id."""
    orbit_of: tuple[int, ...]
    u: int


def _neighbor_masks(k: int, bits: int) -> list[int]:
    masks = [0] * k
    L = num_pairs(k)
    for a, (i, j) in enumerate(pair_order(k)):
        if bits >> (L - 1 - a) & 1:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
    return masks


def _bits_connected(k: int, bits: int) -> bool:
    masks = _neighbor_masks(k, bits)
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        rest = frontier
        while rest:
            low = rest & -rest
            nxt |= masks[low.bit_length() - 1]
            rest ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << k) - 1


def _tables(k: int) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """All k! node orderings and the weight matrix turning bits into images.

    Row r of the matrix holds, for each source bit position, the power of two
    it contributes to the bit-string produced by ordering r. The image under
    every permutation is then a single matrix-vector product.
    """
    cached = _table_cache.get(k)
    if cached is not None:
        return cached
    pairs = pair_order(k)
    L = len(pairs)
    idx = {}
    for a, (i, j) in enumerate(pairs):
        idx[i, j] = a
        idx[j, i] = a
    perms = list(itertools.permutations(range(k)))
    weights = np.zeros((len(perms), L), dtype=np.int32)
    for r, order in enumerate(perms):
        row = weights[r]
        for dst, (p, q) in enumerate(pairs):
            row[idx[order[p], order[q]]] += 1 << (L - 1 - dst)
    _table_cache[k] = (perms, weights)
    return perms, weights


_SUM_GROUP = 5


def _sum_tables(k: int) -> list[tuple[int, int, np.ndarray]]:
    """Partial-sum tables turning the full matrix product into table adds.

    Bit positions are split into runs of _SUM_GROUP; each run gets a table
    whose row s holds the permutation images of that run's subset s. Summing
    one row per run equals weights @ bit_vector exactly, at a fraction of
    the work of the full product. Entries are (shift, mask, table).
    """
    cached = _sum_cache.get(k)
    if cached is not None:
        return cached
    _, weights = _tables(k)
    w64 = weights.astype(np.int64)
    L = num_pairs(k)
    out: list[tuple[int, int, np.ndarray]] = []
    for lo in range(0, L, _SUM_GROUP):
        hi = min(lo + _SUM_GROUP, L)
        width = hi - lo
        table = np.zeros((1 << width, weights.shape[0]), dtype=np.int64)
        for s in range(1, 1 << width):
            low = s & -s
            a = lo + width - low.bit_length()
            table[s] = table[s ^ low] + w64[:, a]
        out.append((L - hi, (1 << width) - 1, table))
    _sum_cache[k] = out
    return out


def _images(k: int, bits: int) -> np.ndarray:
    """Bit-string image under every node ordering, in _tables(k) order."""
    runs = _sum_tables(k)
    shift, mask, table = runs[0]
    acc = table[(bits >> shift) & mask].copy()
    for shift, mask, table in runs[1:]:
        acc += table[(bits >> shift) & mask]
    return acc


def encode_graphlet(g, nodes) -> GraphletEncoding:
    """Encode the subgraph induced on an ordered node list.

    The nodes must be distinct, present in the graph, and induce a connected
    subgraph; a disconnected induction raises DisconnectedGraphletError so
    callers can decide whether that is fatal.
    """
    nodes = tuple(nodes)
    k = len(nodes)
    if not MIN_K <= k <= MAX_K:
        raise ValueError(f"graphlet size {k} outside [{MIN_K}, {MAX_K}]")
    if len(set(nodes)) != k:
        raise ValueError("repeated node in graphlet")
    for v in nodes:
        if not 0 <= v < g.n:
            raise ValueError(f"node {v} not in graph")
    bits = 0
    L = num_pairs(k)
    for a, (i, j) in enumerate(pair_order(k)):
        if g.has_edge(nodes[i], nodes[j]):
            bits |= 1 << (L - 1 - a)
    if not _bits_connected(k, bits):
        raise DisconnectedGraphletError(f"nodes {nodes} induce a disconnected subgraph")
    return GraphletEncoding(k, bits, nodes)


def canonize_bits(k: int, bits: int) -> tuple[int, tuple[int, ...]]:
    """Canonical value and position map for a raw encoding.

    perm[i] is the canonical position of input position i. Callers that
    already hold validated bits (hot loops) use this directly; everyone
    else goes through canonize.
    """
    key = (k, bits)
    hit = _canon_memo.get(key)
    if hit is None:
        perms, _ = _tables(k)
        images = _images(k, bits)
        r = int(np.argmin(images))
        order = perms[r]
        perm = [0] * k
        for pos, src in enumerate(order):
            perm[src] = pos
        hit = (int(images[r]), tuple(perm))
        _canon_memo[key] = hit
    return hit


def canonize(enc: GraphletEncoding) -> tuple[CanonicalGraphletId, tuple[int, ...]]:
    """Return (id, perm) where perm[i] is the canonical position of enc position i."""
    value, perm = canonize_bits(enc.k, enc.bits)
    return CanonicalGraphletId(enc.k, value), perm


def _automorphisms(k: int, masks: list[int], degs: list[int]) -> Iterator[tuple[int, ...]]:
    """Backtracking enumeration of all adjacency-preserving position bijections."""
    image = [-1] * k
    taken = [False] * k

    def place(i: int) -> Iterator[tuple[int, ...]]:
        if i == k:
            yield tuple(image)
            return
        mi = masks[i]
        for q in range(k):
            if taken[q] or degs[q] != degs[i]:
                continue
            mq = masks[q]
            ok = True
            for j in range(i):
                if (mi >> j & 1) != (mq >> image[j] & 1):
                    ok = False
                    break
            if ok:
                image[i] = q
                taken[q] = True
                yield from place(i + 1)
                taken[q] = False
        image[i] = -1

    return place(0)


def _id_masks(cid: CanonicalGraphletId) -> list[int]:
    return _neighbor_masks(cid.k, cid.value)


def orbits(cid: CanonicalGraphletId) -> OrbitPartition:
    """Partition canonical positions into automorphism orbits."""
    key = (cid.k, cid.value)
    hit = _orbit_memo.get(key)
    if hit is not None:
        return hit
    k = cid.k
    masks = _id_masks(cid)
    degs = [m.bit_count() for m in masks]
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    nontrivial = False
    for image in _automorphisms(k, masks, degs):
        for i, q in enumerate(image):
            if i != q:
                nontrivial = True
                a, b = find(i), find(q)
                if a != b:
                    parent[a] = b
    classes: dict[int, int] = {}
    orbit_of = []
    for i in range(k):
        root = find(i)
        if root not in classes:
            classes[root] = len(classes)
        orbit_of.append(classes[root])
    part = OrbitPartition(tuple(orbit_of), len(classes))
    _orbit_memo[key] = part
    _ambig_memo[key] = nontrivial
    return part


def is_ambiguous(cid: CanonicalGraphletId) -> bool:
    """True when the graphlet has fewer than k orbits (some symmetry exists)."""
    key = (cid.k, cid.value)
    hit = _ambig_memo.get(key)
    if hit is not None:
        return hit
    k = cid.k
    masks = _id_masks(cid)
    degs = [m.bit_count() for m in masks]
    ambiguous = False
    for image in _automorphisms(k, masks, degs):
        if any(i != q for i, q in enumerate(image)):
            ambiguous = True
            break
    _ambig_memo[key] = ambiguous
    if not ambiguous:
        _orbit_memo[key] = OrbitPartition(tuple(range(k)), k)
    return ambiguous


def alignment_multiplicity(cid: CanonicalGraphletId) -> int:
    """Product of f! over orbits of size f; 1 exactly for unambiguous graphlets."""
    part = orbits(cid)
    sizes = [0] * part.u
    for c in part.orbit_of:
        sizes[c] += 1
    out = 1
    for f in sizes:
        out *= math.factorial(f)
    return out


def enumerate_connected_graphlets(k: int) -> list[CanonicalGraphletId]:
    """All connected k-node graphlet classes, as ids, ascending.

    Scans every adjacency bit-string in increasing order; an unseen value is
    the lex-min member of a fresh class, whose whole image set is then marked.
    The distinct-image count reveals ambiguity on the side (k!/|Aut| labeled
    copies exist), which pre-populates the ambiguity memo.
    """
    if not MIN_K <= k <= MAX_K:
        raise ValueError(f"graphlet size {k} outside [{MIN_K}, {MAX_K}]")
    perms, _ = _tables(k)
    nperm = len(perms)
    L = num_pairs(k)
    size = 1 << L
    seen = np.zeros(size, dtype=bool)
    found: list[CanonicalGraphletId] = []
    chunk = 1 << 16
    pos = 0
    while pos < size:
        fresh = np.flatnonzero(~seen[pos:pos + chunk])
        for off in fresh:
            v = pos + int(off)
            if seen[v]:
                continue
            images = _images(k, v)
            uniq = np.unique(images)
            seen[uniq] = True
            if _bits_connected(k, v):
                cid = CanonicalGraphletId(k, v)
                found.append(cid)
                _ambig_memo[(k, v)] = uniq.size < nperm
                if uniq.size == nperm:
                    _orbit_memo[(k, v)] = OrbitPartition(tuple(range(k)), k)
        pos += chunk
    return found
