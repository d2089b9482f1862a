"""Product filtrations, the Künneth splitting and universal coefficients.

Two independent routes are provided for each result:

* the *algebraic* route combines factor barcodes with the closed-form
  interval algebra (:func:`kunneth_product_barcode`,
  :func:`uct_cohomology_barcode`);
* the *direct* route builds the product complex (or the cochain complex
  ``Hom(C^f(X), k[alpha, inf))``) and reduces it
  (:func:`product_filtered_complex`, :func:`cochain_barcode`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .barcode import Barcode
from .complex import GF2, Cell, FieldSpec, FilteredComplex
from .intervals import (
    DEFAULT_TOL,
    INF,
    Interval,
    _lp_diff,
    as_interval,
    check_p,
    ext1_lp,
    hom_lp,
    lp_combine,
    tensor_lp,
    tor1_lp,
)
from .reduction import free_complex_barcode, persistent_homology


class NonMonotoneError(ValueError):
    pass


@dataclass(frozen=True)
class PhiMap:
    """Order-preserving combination of two filtration values.

    Either the l^p quasinorm (``p`` set) or an arbitrary user function.
    Only the l^p form has closed-form tensor/Tor of bars.
    """

    p: Optional[float] = None
    func: Optional[Callable] = None
    name: str = ""

    @classmethod
    def lp(cls, p) -> "PhiMap":
        p = check_p(p)
        return cls(p=p, name=f"l^{p:g}")

    @classmethod
    def custom(cls, func: Callable, name: str = "custom") -> "PhiMap":
        return cls(func=func, name=name)

    @property
    def is_lp(self) -> bool:
        return self.p is not None

    def __call__(self, x: float, y: float) -> float:
        if self.p is not None:
            return lp_combine(x, y, self.p)
        return float(self.func(x, y))

    def check_monotone(self, xs, ys, tol: float = DEFAULT_TOL) -> None:
        """Spot-check monotonicity and nonnegativity on the grid ``xs x ys``."""
        if self.is_lp:
            return
        xs, ys = sorted(set(xs)), sorted(set(ys))
        table = [[self(x, y) for y in ys] for x in xs]
        for i, row in enumerate(table):
            for j, v in enumerate(row):
                if not v >= -tol:
                    raise NonMonotoneError(f"phi({xs[i]}, {ys[j]}) = {v} is negative")
                if j and v < row[j - 1] - tol:
                    raise NonMonotoneError(f"phi decreases in y at ({xs[i]}, {ys[j]})")
                if i and v < table[i - 1][j] - tol:
                    raise NonMonotoneError(f"phi decreases in x at ({xs[i]}, {ys[j]})")


def as_phi(phi) -> PhiMap:
    if isinstance(phi, PhiMap):
        return phi
    if callable(phi):
        return PhiMap.custom(phi)
    return PhiMap.lp(phi)


# --------------------------------------------------------------------------
# Künneth: algebraic route
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductTerm:
    degree: int
    kind: str          # "tensor" or "tor"
    i: int
    left: Interval
    j: int
    right: Interval
    result: Interval

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.degree,
            "i": self.i,
            "j": self.j,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "result": self.result.to_json(),
        }


def kunneth_terms(bk: Barcode, bl: Barcode, p, max_degree: Optional[int] = None,
                  tol: float = DEFAULT_TOL) -> list:
    """Every nonzero tensor and Tor_1 term of the split Künneth sequence."""
    p = check_p(p)
    if max_degree is None:
        max_degree = bk.max_degree + bl.max_degree + 1
    terms = []
    for i in bk.degrees:
        for j in bl.degrees:
            for I in bk.degree(i):
                for J in bl.degree(j):
                    if i + j <= max_degree:
                        res = tensor_lp(I, J, p, tol)
                        if res is not None:
                            terms.append(ProductTerm(i + j, "tensor", i, I, j, J, res))
                    if i + j + 1 <= max_degree:
                        res = tor1_lp(I, J, p, tol)
                        if res is not None:
                            terms.append(ProductTerm(i + j + 1, "tor", i, I, j, J, res))
    return terms


def kunneth_product_barcode(bk: Barcode, bl: Barcode, p, max_degree: Optional[int] = None,
                            tol: float = DEFAULT_TOL) -> Barcode:
    """Barcode of the l^p product filtration from the two factor barcodes.

    ``max_degree`` defaults to the largest degree that can be nonzero, the sum
    of the factor top degrees plus one for the Tor shift.
    """
    out = Barcode()
    for term in kunneth_terms(bk, bl, p, max_degree, tol):
        out.add(term.degree, term.result)
    return out


# --------------------------------------------------------------------------
# Künneth: direct route
# --------------------------------------------------------------------------

def product_cell_id(k: int, m: int, n_right: int) -> int:
    """Id of the product of the k-th left cell and the m-th right cell."""
    return k * n_right + m


def product_filtered_complex(X: FilteredComplex, Y: FilteredComplex, phi,
                             name: Optional[str] = None) -> FilteredComplex:
    """Cells sigma x tau filtered by phi(f(sigma), g(tau)).

    The boundary is d(s x t) = ds x t + (-1)^|s| s x dt.  Cell ids are
    ``product_cell_id(k, m, len(Y))`` for list positions ``k``, ``m``.
    """
    phi = as_phi(phi)
    phi.check_monotone([c.value for c in X] + [0.0], [c.value for c in Y] + [0.0])
    xpos = {c.id: k for k, c in enumerate(X.cells)}
    ypos = {c.id: m for m, c in enumerate(Y.cells)}
    n = len(Y.cells)
    cells = []
    for k, s in enumerate(X.cells):
        sign = -1 if s.dim % 2 else 1
        for m, t in enumerate(Y.cells):
            boundary = [(product_cell_id(xpos[f], m, n), c) for f, c in s.boundary]
            boundary += [(product_cell_id(k, ypos[g], n), sign * c) for g, c in t.boundary]
            cells.append(Cell(product_cell_id(k, m, n), s.dim + t.dim, phi(s.value, t.value),
                              tuple(boundary)))
    if name is None:
        name = f"{X.name or 'X'} x {Y.name or 'Y'} ({phi.name})"
    return FilteredComplex(cells, name=name)


# --------------------------------------------------------------------------
# universal coefficients and Borel-Moore
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientTerm:
    degree: int
    kind: str          # "hom" or "ext"
    source_degree: int
    source: Interval
    result: Interval

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.degree,
            "i": self.source_degree,
            "source": self.source.to_json(),
            "result": self.result.to_json(),
        }


def _free_coefficient(A) -> Interval:
    A = as_interval(A)
    if not A.is_free:
        raise ValueError(f"coefficient module must be k[alpha, inf), got {A}")
    return A


def uct_terms(bk: Barcode, A, p, tol: float = DEFAULT_TOL) -> list:
    A = _free_coefficient(A)
    p = check_p(p)
    terms = []
    for i in bk.degrees:
        for I in bk.degree(i):
            res = hom_lp(I, A, p, tol)
            if res is not None:
                terms.append(CoefficientTerm(i, "hom", i, I, res))
            res = ext1_lp(I, A, p, tol)
            if res is not None:
                terms.append(CoefficientTerm(i + 1, "ext", i, I, res))
    return terms


def uct_cohomology_barcode(bk: Barcode, A, p, tol: float = DEFAULT_TOL) -> Barcode:
    """Barcode of H^n(Hom^p(C, A)) for A = k[alpha, inf) from the homology barcode of C."""
    out = Barcode()
    for term in uct_terms(bk, A, p, tol):
        out.add(term.degree, term.result)
    return out


def _check_alpha(X: FilteredComplex, alpha: float, p) -> tuple:
    p = check_p(p)
    if p == INF:
        raise ValueError("Borel-Moore barcodes need a finite p")
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    top = max((c.value for c in X), default=-INF)
    if not alpha > top:
        raise ValueError(f"alpha = {alpha} must exceed every filtration value (max {top})")
    return alpha, p


def borel_moore_barcode(X: FilteredComplex, alpha, p, field: FieldSpec = GF2,
                        tol: float = DEFAULT_TOL) -> Barcode:
    """Persistent Borel-Moore barcode via UCT with coefficients k[alpha, inf).

    Dualizing over a field leaves interval endpoints unchanged, so the
    returned bars are also those of the reversed filtration
    ``(alpha^p - f^p)^(1/p)``.
    """
    alpha, p = _check_alpha(X, alpha, p)
    return uct_cohomology_barcode(persistent_homology(X, field, tol), Interval(alpha, INF), p, tol)


def cochain_barcode(X: FilteredComplex, A, p, field: FieldSpec = GF2,
                    tol: float = DEFAULT_TOL) -> Barcode:
    """Cohomology of Hom^p(C^f(X), A) by direct reduction of the coboundary.

    Each cell contributes ``Hom(k[f, inf), k[alpha, inf)) = k[g, inf)`` with
    ``g = max(0, alpha^p - f^p)^(1/p)``.  Only finite p is supported here.
    """
    A = _free_coefficient(A)
    p = check_p(p)
    if p == INF:
        raise ValueError("direct cochain route needs a finite p")
    alpha = A.birth
    cells = X.cells
    g = [_lp_diff(alpha, c.value, p) for c in cells]
    order = sorted(range(len(cells)), key=lambda k: (g[k], -cells[k].dim, k))
    pos = {cells[k].id: r for r, k in enumerate(order)}
    q = field.q
    delta = [dict() for _ in cells]
    for tau in cells:
        for face, coeff in tau.boundary:
            col = delta[pos[face]]
            row = pos[tau.id]
            col[row] = (col.get(row, 0) + coeff) % q
    delta = [{r: v for r, v in col.items() if v} for col in delta]
    degrees = [cells[k].dim for k in order]
    values = [g[k] for k in order]
    return free_complex_barcode(degrees, values, delta, q, tol)
