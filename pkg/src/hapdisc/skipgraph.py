"""The skip graph on one period block: coloring and odd-cycle extraction.

For each skip s the graph joins every even multiple of s to the next odd
multiple, so the progression s, 2s, 3s, ... is paired off as (s, 2s),
(3s, 4s), ...  mirrored to start at 0.  The structure repeats with period
2*lcm(S) and every edge stays inside one block, so a single block decides
everything: either it 2-colors (discrepancy 1 is achievable) or it holds
an odd cycle (the skip set forces discrepancy two).

Adjacency is computed on demand from divisibility, never materialized;
a vertex that is a multiple of s has exactly one s-arc on each side
pattern, so degrees are at most |S|.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .pattern import SignedPattern, realize
from .realizability import valid_odd_cycle

DEFAULT_PERIOD_CAP = 1 << 24


class PeriodCapExceeded(ValueError):
    def __init__(self, period: int, cap: int):
        super().__init__(
            f"period 2*lcm(S) = {period} exceeds the cap {cap}; "
            "raise the cap or analyze the pattern arithmetically"
        )
        self.period = period
        self.cap = cap


@dataclass(frozen=True)
class SkipGraph:
    """One period block of the graph induced by a skip set."""

    skips: tuple[int, ...]
    lcm: int
    period: int

    def neighbors(self, v: int) -> list[int]:
        out = []
        for s in self.skips:
            q, r = divmod(v, s)
            if r == 0:
                out.append(v + s if q % 2 == 0 else v - s)
        return out

    def edges(self) -> Iterator[tuple[int, int]]:
        """All arcs of one block as (left, right) pairs."""
        for s in self.skips:
            for m in range(self.lcm // s):
                left = 2 * m * s
                yield left, left + s

    def edge_count(self, s: int) -> int:
        if s not in self.skips:
            raise ValueError(f"{s} is not in the skip set {self.skips}")
        return self.lcm // s


def build_graph(skips: Iterable[int], cap: int = DEFAULT_PERIOD_CAP) -> SkipGraph:
    ss = tuple(sorted(set(skips)))
    if not ss:
        raise ValueError("skip set must be nonempty")
    if any(s < 1 for s in ss):
        raise ValueError(f"skips must be positive, got {ss}")
    lcm = math.lcm(*ss)
    period = 2 * lcm
    if period > cap:
        raise PeriodCapExceeded(period, cap)
    return SkipGraph(ss, lcm, period)


@dataclass
class Coloring:
    """A +1/-1 assignment on one period block, extended periodically."""

    period: int
    values: np.ndarray  # int8, entries +1 or -1

    def __getitem__(self, v: int) -> int:
        return int(self.values[v % self.period])

    def line(self) -> str:
        return " ".join("+1" if v > 0 else "-1" for v in self.values)

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "Coloring":
        arr = np.asarray(values, dtype=np.int8)
        if arr.ndim != 1 or arr.size == 0 or not np.all(np.abs(arr) == 1):
            raise ValueError("coloring must be a nonempty sequence of +1/-1")
        return cls(int(arr.size), arr)


@dataclass(frozen=True)
class OddCycleCertificate:
    """A concrete odd cycle: proof that the skip set forces discrepancy two."""

    signed_pattern: SignedPattern
    start: int

    def to_json_dict(self) -> dict:
        return realize(self.signed_pattern, self.start).to_json_dict()


def _bfs_color(
    g: SkipGraph, track_parents: bool
) -> tuple[bytearray, tuple[int, int] | None, list[int] | None]:
    """Two-color by BFS; colors are 1/2, 0 means unvisited.

    Returns (colors, conflict_edge, parents).  A conflict edge joins two
    vertices of the same color and witnesses an odd cycle.
    """
    period = g.period
    skips = g.skips
    color = bytearray(period)
    parent: list[int] | None = [-1] * period if track_parents else None
    queue: deque[int] = deque()
    for root in range(period):
        if color[root]:
            continue
        color[root] = 1  # isolated vertices stay +1 by convention
        if not any(root % s == 0 for s in skips):
            continue
        queue.append(root)
        while queue:
            v = queue.popleft()
            cv = color[v]
            for s in skips:
                q, r = divmod(v, s)
                if r:
                    continue
                u = v + s if q % 2 == 0 else v - s
                if color[u] == 0:
                    color[u] = 3 - cv
                    if parent is not None:
                        parent[u] = v
                    queue.append(u)
                elif color[u] == cv:
                    return color, (v, u), parent
    return color, None, parent


def two_color(g: SkipGraph) -> Coloring | None:
    """Bipartition of one block, or None when an odd cycle exists."""
    color, conflict, _ = _bfs_color(g, track_parents=False)
    if conflict is not None:
        return None
    values = np.frombuffer(bytes(color), dtype=np.int8).copy()
    values[values == 2] = -1
    return Coloring(g.period, values)


def _chain_to_root(v: int, parent: list[int]) -> list[int]:
    chain = [v]
    while parent[chain[-1]] != -1:
        chain.append(parent[chain[-1]])
    return chain


def _canonical_cycle(vertices: list[int]) -> tuple[SignedPattern, int]:
    """Rotate to the least vertex and orient by sign order (+ before -)."""
    i0 = vertices.index(min(vertices))
    rot = vertices[i0:] + vertices[:i0]
    candidates = []
    for vs in (rot, [rot[0]] + rot[1:][::-1]):
        steps = []
        for a, b in zip(vs, vs[1:] + vs[:1]):
            d = b - a
            steps.append((1 if d > 0 else -1, abs(d)))
        sp = SignedPattern(tuple(steps))
        candidates.append((tuple((1 - s) // 2 for s in sp.signs), sp.skips, sp))
    candidates.sort(key=lambda c: (c[0], c[1]))
    return candidates[0][2], rot[0]


def find_odd_cycle(g: SkipGraph) -> OddCycleCertificate | None:
    """Extract an odd cycle from the BFS conflict edge plus tree paths."""
    _, conflict, parent = _bfs_color(g, track_parents=True)
    if conflict is None:
        return None
    assert parent is not None
    v, u = conflict
    chain_v = _chain_to_root(v, parent)
    in_chain_v = {x: k for k, x in enumerate(chain_v)}
    chain_u = [u]
    while chain_u[-1] not in in_chain_v:
        chain_u.append(parent[chain_u[-1]])
    lca_idx = in_chain_v[chain_u[-1]]
    vertices = chain_v[: lca_idx + 1] + chain_u[:-1][::-1]
    assert len(vertices) % 2 == 1 and len(set(vertices)) == len(vertices)
    sp, start = _canonical_cycle(vertices)
    assert all(skip in g.skips for skip in sp.skips)
    verdict = valid_odd_cycle(sp)
    if not verdict.valid:
        raise RuntimeError(f"extracted cycle failed validation: {sp.steps}")
    return OddCycleCertificate(sp, start)


def verify_discrepancy(coloring: Coloring, skips: Iterable[int], horizon: int) -> int:
    """Maximum |partial sum| over progressions s, 2s, ... up to the horizon.

    The block coloring indexes vertices 0..period-1 while the progressions
    index 1..horizon; the two rangings are mirror images, so position i
    reads the color of vertex -i mod period.
    """
    ss = tuple(sorted(set(skips)))
    if not ss or any(s < 1 for s in ss):
        raise ValueError(f"skips must be positive, got {ss}")
    if horizon < max(ss):
        raise ValueError(f"horizon {horizon} is below max skip {max(ss)}")
    period = coloring.period
    values = coloring.values.astype(np.int64)
    worst = 0
    for s in ss:
        count = horizon // s
        idx = (np.arange(1, count + 1, dtype=np.int64) * (-s)) % period
        sums = np.cumsum(values[idx])
        worst = max(worst, int(np.max(np.abs(sums))))
    return worst
