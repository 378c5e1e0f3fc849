"""Grow one large alignment by randomly toggling seed memberships.

Seeds that survive the similarity filter are added to and removed from a
shared pool of node pairs. Pairs are reference counted because seeds overlap;
the forward and backward maps answer consistency queries in constant time,
and the conserved-edge counters are updated incrementally so the running
edge-conservation score never needs a full recount. A seed joins only while
the pool stays one-to-one and the score stays at or above the floor; removal
is unconditional, which lets the walk escape local optima. The best state
seen with the score floor intact is what comes back.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import Graph
from .odv import alignment_mean_odv


@dataclass(frozen=True)
class MergeParams:
    odv_filter: float = 0.95
    min_s3: float = 0.95
    iterations: int = 20000
    rng_seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.min_s3 <= 1.0:
            raise ValueError(f"score floor must be in (0, 1], got {self.min_s3}")
        if self.iterations < 1:
            raise ValueError("iteration count must be at least 1")


class MergedAlignment:
    """Reference-counted union of member seeds with running score counters.

    s3_num holds the conserved edge count, s3_den the union edge count
    (edges present on either side among aligned nodes). Both are exact
    integers, so incremental updates can be inverted without drift.
    """

    __slots__ = ("g1", "g2", "seeds", "pairs", "forward", "backward",
                 "members", "s3_num", "s3_den")

    def __init__(self, g1: Graph, g2: Graph, seeds: Sequence):
        self.g1 = g1
        self.g2 = g2
        self.seeds = list(seeds)
        self.pairs: dict[tuple[int, int], int] = {}
        self.forward: dict[int, int] = {}
        self.backward: dict[int, int] = {}
        self.members = [False] * len(self.seeds)
        self.s3_num = 0
        self.s3_den = 0

    @property
    def size(self) -> int:
        return len(self.forward)

    @property
    def s3(self) -> float:
        return 1.0 if self.s3_den == 0 else self.s3_num / self.s3_den

    def add_seed(self, i: int) -> None:
        seed = self.seeds[i]
        novel = [p for p in seed.pairs if p not in self.pairs]
        d_num, d_den = _delta(self.g1, self.g2, self.forward, self.backward,
                              novel)
        for p in seed.pairs:
            self.pairs[p] = self.pairs.get(p, 0) + 1
        for u, v in novel:
            self.forward[u] = v
            self.backward[v] = u
        self.s3_num += d_num
        self.s3_den += d_den
        self.members[i] = True

    def remove_seed(self, i: int) -> None:
        if not self.members[i]:
            raise ValueError(f"seed {i} is not a member")
        seed = self.seeds[i]
        leaving = []
        for p in seed.pairs:
            left = self.pairs[p] - 1
            if left:
                self.pairs[p] = left
            else:
                del self.pairs[p]
                leaving.append(p)
        for u, v in leaving:
            del self.forward[u]
            del self.backward[v]
        # what the leaving pairs would add back is exactly what they carried
        d_num, d_den = _delta(self.g1, self.g2, self.forward, self.backward,
                              leaving)
        self.s3_num -= d_num
        self.s3_den -= d_den
        self.members[i] = False


def _delta(g1: Graph, g2: Graph, forward: dict, backward: dict,
           novel: Iterable[tuple[int, int]]) -> tuple[int, int]:
    """Score-counter change from laying novel pairs over the given maps.

    Pairs are applied one at a time onto an overlay, so edges between two
    novel nodes are counted once. Returns (conserved delta, union delta).
    """
    d_c = d_e1 = d_e2 = 0
    over_f: dict[int, int] = {}
    over_b: dict[int, int] = {}
    for u, v in novel:
        for w in g1.neighbors(u):
            x = forward.get(w)
            if x is None:
                x = over_f.get(w)
            if x is not None:
                d_e1 += 1
                if g2.has_edge(v, x):
                    d_c += 1
        for y in g2.neighbors(v):
            if y in backward or y in over_b:
                d_e2 += 1
        over_f[u] = v
        over_b[v] = u
    return d_c, d_e1 + d_e2 - d_c


def is_one2one(m: MergedAlignment, seed) -> bool:
    """True when every seed pair is absent or identically present."""
    forward = m.forward
    backward = m.backward
    for u, v in seed.pairs:
        if forward.get(u, v) != v or backward.get(v, u) != u:
            return False
    return True


def inc_s3_add(m: MergedAlignment, seed) -> tuple[int, int]:
    """Counter change adding the seed would cause, without applying it."""
    novel = [p for p in seed.pairs if p not in m.pairs]
    return _delta(m.g1, m.g2, m.forward, m.backward, novel)


def merge(seeds: Sequence, g1: Graph, g2: Graph, odvs=None,
          params: MergeParams = MergeParams(), weights=None,
          progress: list | None = None) -> MergedAlignment:
    """Run the random toggle walk and return the largest passing state.

    Seeds whose mean per-pair similarity reaches the filter threshold are
    dropped up front (a threshold above 1 keeps everything and the tables
    are not consulted). Each iteration draws one surviving seed index:
    members leave unconditionally, non-members join if the pool stays
    one-to-one and the score floor holds. The returned alignment is rebuilt
    from the member set of the biggest floor-respecting state observed;
    `progress` (if given) collects (iteration, size, score) at improvements.
    """
    if params.odv_filter <= 1.0:
        if odvs is None:
            raise ValueError("similarity tables required while the filter is active")
        odv1, odv2 = odvs
        kept = [s for s in seeds
                if alignment_mean_odv(s, odv1, odv2, weights) < params.odv_filter]
    else:
        kept = list(seeds)

    state = MergedAlignment(g1, g2, kept)
    best_members: list[bool] | None = None
    best_size = 0
    if not kept:
        return state
    rng = random.Random(params.rng_seed)
    for step in range(params.iterations):
        i = rng.randrange(len(kept))
        if state.members[i]:
            state.remove_seed(i)
        else:
            seed = kept[i]
            if is_one2one(state, seed):
                d_num, d_den = inc_s3_add(state, seed)
                num = state.s3_num + d_num
                den = state.s3_den + d_den
                if (num / den if den else 1.0) >= params.min_s3:
                    state.add_seed(i)
        if state.size > best_size and state.s3 >= params.min_s3:
            best_size = state.size
            best_members = state.members.copy()
            if progress is not None:
                progress.append((step, state.size, state.s3))
    if best_members is None:
        return MergedAlignment(g1, g2, kept)
    final = MergedAlignment(g1, g2, kept)
    for i, member in enumerate(best_members):
        if member:
            final.add_seed(i)
    return final
