"""Finite metric spaces, l^p products, samplers and Vietoris-Rips filtrations."""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .barcode import Barcode
from .complex import GF2, Cell, FieldSpec, FilteredComplex
from .intervals import DEFAULT_TOL, INF, check_p, lp_combine, make_interval
from .reduction import persistent_homology


@dataclass
class FiniteMetricSpace:
    """Symmetric dissimilarity matrix with zero diagonal.

    The triangle inequality is not enforced; see :meth:`check_triangle`.
    """

    d: np.ndarray
    labels: Optional[Sequence] = None
    name: str = ""

    def __post_init__(self):
        d = np.array(self.d, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {d.shape}")
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise ValueError("distances must be finite and nonnegative")
        if np.any(np.diag(d) != 0):
            raise ValueError("distance matrix must have a zero diagonal")
        if not np.allclose(d, d.T, rtol=0, atol=DEFAULT_TOL):
            raise ValueError("distance matrix must be symmetric")
        d = (d + d.T) / 2
        d.setflags(write=False)
        self.d = d
        if self.labels is not None and len(self.labels) != d.shape[0]:
            raise ValueError("one label per point required")

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __len__(self):
        return self.n

    @property
    def diameter(self) -> float:
        return float(self.d.max()) if self.n else 0.0

    def check_triangle(self, tol: float = DEFAULT_TOL) -> bool:
        d = self.d
        # d[i,k] <= d[i,j] + d[j,k] for all i, j, k
        return bool(np.all(d[:, None, :] <= d[:, :, None] + d[None, :, :] + tol))

    @classmethod
    def from_csv_text(cls, text: str, name: str = "") -> "FiniteMetricSpace":
        """Full symmetric matrix; a non-numeric first row is taken as labels."""
        rows = [r for r in csv.reader(io.StringIO(text)) if r and any(x.strip() for x in r)]
        labels = None
        if rows:
            try:
                [float(x) for x in rows[0]]
            except ValueError:
                labels, rows = [x.strip() for x in rows[0]], rows[1:]
        d = np.array([[float(x) for x in r] for r in rows], dtype=np.float64).reshape(len(rows), -1)
        return cls(d, labels=labels, name=name)

    @classmethod
    def read_csv(cls, path) -> "FiniteMetricSpace":
        with open(path, newline="") as fh:
            return cls.from_csv_text(fh.read(), name=str(path))

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        if self.labels is not None:
            writer.writerow(self.labels)
        for row in self.d:
            writer.writerow([repr(float(x)) for x in row])
        return out.getvalue()


def _metric_p(p) -> float:
    p = check_p(p)
    if p < 1:
        raise ValueError(f"the l^p product is a metric only for p >= 1, got {p}")
    return p


def product_metric(X: FiniteMetricSpace, Y: FiniteMetricSpace, p) -> FiniteMetricSpace:
    """X x Y with ``d((x,y),(x',y')) = ||(d_X(x,x'), d_Y(y,y'))||_p``, row-major in (x, y)."""
    p = _metric_p(p)
    dx = X.d[:, None, :, None]
    dy = Y.d[None, :, None, :]
    # same scalar rule as product filtrations, so both agree bit for bit
    combine = np.frompyfunc(lambda a, b: lp_combine(a, b, p), 2, 1)
    d = combine(dx, dy).astype(np.float64)
    n = X.n * Y.n
    labels = None
    if X.labels is not None and Y.labels is not None:
        labels = [f"{a}|{b}" for a, b in itertools.product(X.labels, Y.labels)]
    return FiniteMetricSpace(d.reshape(n, n), labels=labels, name=f"{X.name} x {Y.name}")


def _rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def sample_interval(n: int, seed=None) -> FiniteMetricSpace:
    """n i.i.d. uniform points of [0, 1] with |x - y|."""
    if n < 1:
        raise ValueError("need at least one point")
    x = _rng(seed).uniform(0.0, 1.0, size=n)
    return FiniteMetricSpace(np.abs(x[:, None] - x[None, :]), name=f"interval[{n}]")


def sample_circle(n: int, seed=None) -> FiniteMetricSpace:
    """n i.i.d. uniform angles on the unit circle with the geodesic metric."""
    if n < 1:
        raise ValueError("need at least one point")
    theta = _rng(seed).uniform(0.0, 2 * math.pi, size=n)
    gap = np.abs(theta[:, None] - theta[None, :])
    return FiniteMetricSpace(np.minimum(gap, 2 * math.pi - gap), name=f"circle[{n}]")


SAMPLERS = {"interval": sample_interval, "circle": sample_circle}


def vietoris_rips(m: FiniteMetricSpace, max_dim: int, max_scale: float = INF) -> FilteredComplex:
    """Explicit Rips complex: simplices of dimension <= max_dim with diameter <= max_scale.

    Cell ids are assigned in enumeration order (by dimension, then
    lexicographically in the vertices); the boundary uses alternating signs.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    d = m.d
    cells = []
    ids = {}
    for k in range(max_dim + 1):
        for simplex in itertools.combinations(range(m.n), k + 1):
            value = max((d[a, b] for a, b in itertools.combinations(simplex, 2)), default=0.0)
            if value > max_scale:
                continue
            faces = []
            if k:
                for i in range(k + 1):
                    faces.append((ids[simplex[:i] + simplex[i + 1:]], -1 if i % 2 else 1))
            ids[simplex] = len(cells)
            cells.append(Cell(len(cells), k, float(value), tuple(faces)))
    return FilteredComplex(cells, name=f"VR({m.name})")


def vr_barcode(m: FiniteMetricSpace, max_degree: int, max_scale: float = INF,
               method: str = "fast", field: FieldSpec = GF2,
               tol: float = DEFAULT_TOL) -> Barcode:
    """Rips barcode in degrees 0..max_degree.

    ``fast`` runs the compiled GF(2) cohomology engine; ``reference`` reduces
    the explicit complex (any prime field, small inputs only).
    """
    if method == "reference" or field.q != 2:
        bc = persistent_homology(vietoris_rips(m, max_degree + 1, max_scale), field, tol)
        return bc.truncated(max_degree)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    from ._vr_fast import vr_pairs

    out = Barcode()
    for k, (births, deaths) in vr_pairs(m.d, max_degree, max_scale).items():
        out.extend(k, (make_interval(float(b), float(e), tol) for b, e in zip(births, deaths)))
    return out
