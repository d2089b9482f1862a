"""Persistence diagrams and the bottleneck distance."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .barcode import Barcode
from .intervals import INF, Interval, parse_endpoint


@dataclass
class Diagram:
    """Per-degree multisets of points (birth, death), death possibly inf."""

    points: dict = field(default_factory=dict)

    @classmethod
    def from_barcode(cls, barcode: Barcode) -> "Diagram":
        return cls({n: [(iv.birth, iv.death) for iv in barcode.degree(n)] for n in barcode.degrees})

    def degree(self, n: int) -> list:
        return list(self.points.get(n, []))

    @property
    def degrees(self) -> list:
        return sorted(self.points)

    def to_barcode(self) -> Barcode:
        return Barcode({n: [Interval(b, d) for b, d in pts if b < d] for n, pts in self.points.items()})


def _as_points(slice_) -> list:
    out = []
    for pt in slice_:
        if isinstance(pt, Interval):
            b, d = pt.birth, pt.death
        else:
            b, d = (parse_endpoint(x) for x in pt)
        if d < b:
            raise ValueError(f"diagram point ({b}, {d}) lies below the diagonal")
        out.append((float(b), float(d)))
    return out


def _essential_cost(a: list, b: list) -> float:
    if len(a) != len(b):
        return INF
    if not a:
        return 0.0
    # on a line, sorted order is an optimal bottleneck matching
    return float(np.max(np.abs(np.sort(a) - np.sort(b))))


def _perfect_matching_exists(adj: np.ndarray) -> bool:
    graph = csr_matrix(adj.astype(np.int8))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0))


def _finite_cost(A: np.ndarray, B: np.ndarray) -> float:
    m, n = len(A), len(B)
    if m == 0 and n == 0:
        return 0.0
    half_a = (A[:, 1] - A[:, 0]) / 2 if m else np.empty(0)
    half_b = (B[:, 1] - B[:, 0]) / 2 if n else np.empty(0)
    if m == 0:
        return float(half_b.max())
    if n == 0:
        return float(half_a.max())
    cross = np.maximum(np.abs(A[:, None, 0] - B[None, :, 0]), np.abs(A[:, None, 1] - B[None, :, 1]))
    candidates = np.unique(np.concatenate([cross.ravel(), half_a, half_b, [0.0]]))

    # rows: A then diagonal copies of B; columns: B then diagonal copies of A
    def feasible(c: float) -> bool:
        adj = np.zeros((m + n, n + m), dtype=bool)
        adj[:m, :n] = cross <= c
        adj[np.arange(m), n + np.arange(m)] = half_a <= c
        adj[m + np.arange(n), np.arange(n)] = half_b <= c
        adj[m:, n:] = True
        return _perfect_matching_exists(adj)

    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def bottleneck_distance(a, b) -> float:
    """Bottleneck distance between two single-degree diagrams.

    Points may be (birth, death) pairs or Intervals.  Matching uses the
    sup norm with inf - inf = 0; an unmatched point costs half its
    persistence.  Essential points only match essential points, so the
    distance is inf when their counts differ.
    """
    a, b = _as_points(a), _as_points(b)
    ess_a = [p[0] for p in a if p[1] == INF]
    ess_b = [p[0] for p in b if p[1] == INF]
    cost = _essential_cost(ess_a, ess_b)
    if cost == INF:
        return INF
    fin_a = np.array([p for p in a if p[1] != INF], dtype=np.float64).reshape(-1, 2)
    fin_b = np.array([p for p in b if p[1] != INF], dtype=np.float64).reshape(-1, 2)
    return max(cost, _finite_cost(fin_a, fin_b))


def bottleneck_by_degree(a: Barcode, b: Barcode, degrees=None) -> dict:
    if degrees is None:
        degrees = sorted(set(a.degrees) | set(b.degrees))
    return {n: bottleneck_distance(a.degree(n), b.degree(n)) for n in degrees}

