"""Carve training windows out of a timestamped edge stream.

The base window swallows the stream's prefix, keeping each undirected edge
once, until a size cap would be breached. Later windows start where a chosen
percentage of the base window's edges has dropped out of the remaining
stream for good; an edge that shows up again later is not lost yet. Each
later window then collects the same number of distinct edges as the base
one, or as many as remain.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import LocalignError
from .graphs import Graph

log = logging.getLogger(__name__)

ALLOWED_SHIFTS = (0, 1, 3, 5)


@dataclass(frozen=True)
class TemporalEdgeStream:
    """Time-ordered (label, label, seconds) events."""

    events: tuple[tuple[str, str, int], ...]

    def __post_init__(self):
        times = [t for _, _, t in self.events]
        if any(a > b for a, b in zip(times, times[1:])):
            raise ValueError("events must be sorted by timestamp")


@dataclass(frozen=True)
class WindowCaps:
    max_nodes: int = 20000
    max_edges: int = 400000
    max_ratio: int = 20

    def __post_init__(self):
        if min(self.max_nodes, self.max_edges, self.max_ratio) < 1:
            raise ValueError("window caps must be positive")


def load_temporal(path: str) -> TemporalEdgeStream:
    """Parse "u v timestamp" lines; '#' starts a comment."""
    events = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            if len(toks) != 3:
                raise LocalignError(
                    f"{path}:{lineno}: expected 'u v timestamp', got {len(toks)} tokens")
            try:
                stamp = int(toks[2])
            except ValueError:
                raise LocalignError(
                    f"{path}:{lineno}: timestamp {toks[2]!r} is not an integer")
            events.append((toks[0], toks[1], stamp))
    try:
        return TemporalEdgeStream(tuple(events))
    except ValueError as e:
        raise LocalignError(f"{path}: {e}")


def _accumulate(events, start: int, budget: int | None,
                caps: WindowCaps) -> list[tuple[str, str]]:
    """Distinct edges of the window beginning at event index start."""
    nodes: set[str] = set()
    edges: dict[tuple[str, str], None] = {}
    for idx in range(start, len(events)):
        u, v, _ = events[idx]
        if u == v:
            continue
        e = (u, v) if u <= v else (v, u)
        if e in edges:
            continue
        grown = len(nodes) + (u not in nodes) + (v not in nodes)
        if grown > caps.max_nodes:
            break
        if len(edges) + 1 > caps.max_edges:
            break
        if len(edges) + 1 > caps.max_ratio * grown:
            break
        edges[e] = None
        nodes.add(u)
        nodes.add(v)
        if budget is not None and len(edges) == budget:
            break
    return list(edges)


def build_windows(stream: TemporalEdgeStream, shifts: list[int],
                  caps: WindowCaps = WindowCaps()) -> list[tuple[int, Graph]]:
    """One graph per requested shift percentage, tagged with its shift.

    A shift is dropped (with a warning) when the stream ends before that
    much of the base window has been lost; the result tuples tell the
    caller which shifts survived.
    """
    for p in shifts:
        if p not in ALLOWED_SHIFTS:
            raise ValueError(f"shift {p} not in {ALLOWED_SHIFTS}")
    events = stream.events
    if not events:
        raise LocalignError("temporal stream has no events")
    base = _accumulate(events, 0, None, caps)
    budget = len(base)
    if budget == 0:
        raise LocalignError("no usable edges in the stream prefix")

    last_seen: dict[tuple[str, str], int] = {}
    for idx, (u, v, _) in enumerate(events):
        if u != v:
            e = (u, v) if u <= v else (v, u)
            last_seen[e] = idx
    # ascending last-occurrence indexes of base-window edges: the count lost
    # before event i is how many of these lie strictly below i
    gone_at = sorted(last_seen[e] for e in base)

    out: list[tuple[int, Graph]] = []
    for p in sorted(set(shifts)):
        need = -(-p * budget // 100)
        if need == 0:
            start = 0
        else:
            # the smallest start losing at least `need` edges comes right
            # after the need-th smallest last occurrence
            start = gone_at[need - 1] + 1
        if start >= len(events):
            log.warning("shift %d%% unreachable: stream ends before %d of %d "
                        "base edges are lost", p, need, budget)
            continue
        edges = _accumulate(events, start, budget, caps)
        out.append((p, Graph.from_edges(edges)))
    return out
