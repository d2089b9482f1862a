"""Graded barcodes: one multiset of intervals per homology degree."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .intervals import DEFAULT_TOL, INF, Interval


@dataclass
class Barcode:
    """Per-degree multisets of nonzero intervals.

    Lists are kept sorted, so two barcodes with identical bars compare equal.
    Missing degrees are empty.
    """

    bars: dict = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for degree, intervals in self.bars.items():
            kept = sorted(iv for iv in intervals if iv is not None)
            if kept:
                cleaned[int(degree)] = kept
        self.bars = cleaned

    def add(self, degree: int, interval: Optional[Interval]) -> None:
        if interval is None:
            return
        bucket = self.bars.setdefault(int(degree), [])
        bucket.append(interval)
        bucket.sort()

    def extend(self, degree: int, intervals: Iterable[Optional[Interval]]) -> None:
        for interval in intervals:
            self.add(degree, interval)

    def degree(self, n: int) -> list:
        return list(self.bars.get(n, []))

    def __getitem__(self, n: int) -> list:
        return self.degree(n)

    @property
    def degrees(self) -> list:
        return sorted(self.bars)

    @property
    def max_degree(self) -> int:
        return max(self.bars, default=-1)

    def __len__(self):
        return sum(len(v) for v in self.bars.values())

    def pointwise_rank(self, degree: int, t: float, tol: float = DEFAULT_TOL) -> int:
        return pointwise_rank(self, degree, t, tol)

    def truncated(self, max_degree: int) -> "Barcode":
        return Barcode({n: v for n, v in self.bars.items() if n <= max_degree})

    def isclose(self, other: "Barcode", tol: float = DEFAULT_TOL) -> bool:
        degrees = set(self.bars) | set(other.bars)
        return all(multiset_close(self.degree(n), other.degree(n), tol) for n in degrees)

    def to_json(self, degrees: Optional[Iterable[int]] = None) -> list:
        if degrees is None:
            degrees = self.degrees
        return [
            {"degree": n, "bars": [iv.to_json() for iv in self.degree(n)]}
            for n in degrees
        ]

    def dumps(self, **kwargs) -> str:
        return json.dumps(self.to_json(), **kwargs)

    @classmethod
    def from_json(cls, data) -> "Barcode":
        if isinstance(data, dict):
            data = [data]
        out = cls()
        for record in data:
            out.extend(record["degree"], (Interval.from_json(b) for b in record["bars"]))
        return out

    @classmethod
    def loads(cls, text: str) -> "Barcode":
        return cls.from_json(json.loads(text))

    def __repr__(self):
        body = ", ".join(f"H{n}: {self.bars[n]}" for n in self.degrees)
        return f"Barcode({body})"


def pointwise_rank(barcode: Barcode, degree: int, t: float, tol: float = DEFAULT_TOL) -> int:
    """Number of bars in ``degree`` alive at ``t``; ``t = inf`` counts essential bars."""
    if t == INF:
        return sum(1 for iv in barcode.degree(degree) if iv.death == INF)
    return sum(1 for iv in barcode.degree(degree) if iv.contains(t, tol))


def multiset_close(A, B, tol: float = DEFAULT_TOL) -> bool:
    """Equality of interval multisets with endpoints compared within ``tol``."""
    if len(A) != len(B):
        return False
    remaining = sorted(B)
    for a in sorted(A):
        for k, b in enumerate(remaining):
            if a.isclose(b, tol):
                del remaining[k]
                break
        else:
            return False
    return True
