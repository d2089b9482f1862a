"""Column reduction of boundary matrices over GF(q).

Columns are sparse dicts ``row -> coefficient``.  The same engine reduces the
boundary of a filtered complex and any other filtered free complex whose
differential lowers the filtration order (e.g. the cochain complex used for
the universal-coefficient cross-check).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .barcode import Barcode
from .complex import GF2, FieldSpec, FilteredComplex, InvalidFiltrationError, validate_filtration
from .intervals import DEFAULT_TOL, INF, make_interval


def _low(col: dict) -> int:
    return max(col) if col else -1


def _axpy(target: dict, source: dict, factor: int, q: int) -> None:
    """target += factor * source (mod q), in place."""
    for row, val in source.items():
        new = (target.get(row, 0) + factor * val) % q
        if new:
            target[row] = new
        else:
            target.pop(row, None)


def reduce_columns(columns: Sequence[dict], q: int = 2, track: bool = True):
    """Standard left-to-right reduction.

    Returns ``(R, V, pivot_col)`` where ``pivot_col[row]`` is the column whose
    lowest nonzero entry sits in ``row``.  ``V`` is ``None`` when not tracked.
    """
    R = [{r: c % q for r, c in col.items() if c % q} for col in columns]
    V = [{j: 1} for j in range(len(R))] if track else None
    pivot_col: dict = {}
    for j, col in enumerate(R):
        low = _low(col)
        while low >= 0 and low in pivot_col:
            i = pivot_col[low]
            factor = (-col[low] * pow(R[i][low], q - 2, q)) % q
            _axpy(col, R[i], factor, q)
            if track:
                _axpy(V[j], V[i], factor, q)
            low = _low(col)
        if low >= 0:
            pivot_col[low] = j
    return R, V, pivot_col


@dataclass
class ReducedBoundary:
    """Reduced boundary ``R = D V`` in the global filtration order."""

    order: list                     # cell ids in reduction order
    degrees: list
    values: list
    D: list
    R: list
    V: list
    pivot_col: dict
    field: FieldSpec = field(default=GF2)

    def low(self, j: int) -> int:
        return _low(self.R[j])

    def pairs(self):
        """(birth position, death position) for every nonzero column of R."""
        return sorted((row, col) for row, col in self.pivot_col.items())

    def essential(self):
        """Positions of positive columns never used as a pivot row."""
        return [j for j in range(len(self.R)) if not self.R[j] and j not in self.pivot_col]

    def check_certificate(self) -> bool:
        """Re-multiply: R = D V, V upper unitriangular-up-to-unit, lows distinct."""
        q = self.field.q
        if self.V is None:
            raise ValueError("reduction was run without tracking V")
        for j, vcol in enumerate(self.V):
            if any(i > j for i in vcol) or not vcol.get(j):
                return False
            prod: dict = {}
            for i, coeff in vcol.items():
                _axpy(prod, self.D[i], coeff, q)
            if prod != self.R[j]:
                return False
        lows = [self.low(j) for j in range(len(self.R)) if self.R[j]]
        return len(lows) == len(set(lows))

    def barcode(self, tol: float = DEFAULT_TOL) -> Barcode:
        out = Barcode()
        for row, col in self.pairs():
            out.add(self.degrees[row], make_interval(self.values[row], self.values[col], tol))
        for j in self.essential():
            out.add(self.degrees[j], make_interval(self.values[j], INF, tol))
        return out


def filtration_order(c: FilteredComplex) -> list:
    """Cell positions sorted by (value, dimension, input index)."""
    return sorted(range(len(c.cells)), key=lambda k: (c.cells[k].value, c.cells[k].dim, k))


def reduce_boundary(c: FilteredComplex, field: FieldSpec = GF2, track: bool = True,
                    validate: bool = True) -> ReducedBoundary:
    if validate:
        violations = validate_filtration(c)
        if violations:
            raise InvalidFiltrationError(violations)
    order = filtration_order(c)
    cells = [c.cells[k] for k in order]
    position = {cell.id: k for k, cell in enumerate(cells)}
    D = [{position[f]: coeff % field.q for f, coeff in cell.boundary if coeff % field.q}
         for cell in cells]
    R, V, pivot_col = reduce_columns(D, field.q, track)
    return ReducedBoundary(
        order=[cell.id for cell in cells],
        degrees=[cell.dim for cell in cells],
        values=[cell.value for cell in cells],
        D=D, R=R, V=V, pivot_col=pivot_col, field=field,
    )


def persistent_homology(c: FilteredComplex, field: FieldSpec = GF2,
                        tol: float = DEFAULT_TOL) -> Barcode:
    """Barcode of H_n(C^f(X)) for every n; zero-length bars are dropped."""
    return reduce_boundary(c, field, track=False).barcode(tol)


def free_complex_barcode(degrees: Sequence[int], values: Sequence[float],
                         differential: Sequence[dict], q: int = 2,
                         tol: float = DEFAULT_TOL) -> Barcode:
    """Barcode of a complex of free modules ``(+) k[values[j], inf)``.

    Generators must be listed so that every target of ``differential[j]`` has
    a smaller position than ``j`` (which forces its value to be no larger).
    A pivot pair (row, col) gives the bar [values[row], values[col]) in the
    degree of the row generator.
    """
    for j, col in enumerate(differential):
        for i in col:
            if i >= j or values[i] > values[j] + tol:
                raise ValueError(f"differential of generator {j} is not filtration-lowering")
    R, _, pivot_col = reduce_columns(differential, q, track=False)
    out = Barcode()
    for row, col in pivot_col.items():
        out.add(degrees[row], make_interval(values[row], values[col], tol))
    for j in range(len(R)):
        if not R[j] and j not in pivot_col:
            out.add(degrees[j], make_interval(values[j], INF, tol))
    return out
