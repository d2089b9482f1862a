"""Filtered cell complexes and their chain complexes of free persistence modules."""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .intervals import DEFAULT_TOL, INF, Interval, json_number, parse_endpoint


class InvalidFiltrationError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(f"cell {v.cell} / face {v.face}: {v.reason}" for v in self.violations[:10])
        super().__init__(f"invalid filtration ({len(self.violations)} violations): {lines}")


@dataclass(frozen=True)
class FieldSpec:
    """Prime field GF(q) of coefficients."""

    characteristic: int = 2

    def __post_init__(self):
        q = int(self.characteristic)
        if q < 2 or any(q % k == 0 for k in range(2, int(q ** 0.5) + 1)):
            raise ValueError(f"field characteristic must be prime, got {q}")
        object.__setattr__(self, "characteristic", q)

    @property
    def q(self) -> int:
        return self.characteristic

    def inv(self, x: int) -> int:
        return pow(x % self.q, self.q - 2, self.q)


GF2 = FieldSpec(2)


@dataclass(frozen=True)
class Cell:
    """A cell with filtration value and signed integer boundary."""

    id: int
    dim: int
    value: float
    boundary: tuple = ()

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError(f"cell {self.id}: negative dimension")
        value = parse_endpoint(self.value)
        if value == INF:
            raise ValueError(f"cell {self.id}: filtration value must be finite")
        merged: dict = {}
        for face, coeff in self.boundary:
            merged[int(face)] = merged.get(int(face), 0) + int(coeff)
        object.__setattr__(self, "value", value)
        object.__setattr__(
            self, "boundary", tuple((f, c) for f, c in sorted(merged.items()) if c != 0)
        )


class Violation(NamedTuple):
    cell: int
    face: int
    reason: str


@dataclass
class FilteredComplex:
    cells: list
    name: str = ""

    def __post_init__(self):
        self.cells = list(self.cells)
        seen = set()
        for cell in self.cells:
            if cell.id in seen:
                raise ValueError(f"duplicate cell id {cell.id}")
            seen.add(cell.id)

    @cached_property
    def by_id(self) -> dict:
        return {cell.id: cell for cell in self.cells}

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    @property
    def max_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def cells_of_dim(self, k: int) -> list:
        return [c for c in self.cells if c.dim == k]

    def counts(self) -> tuple:
        return tuple(len(self.cells_of_dim(k)) for k in range(self.max_dim + 1))

    @classmethod
    def from_text(cls, text: str, name: str = "") -> "FilteredComplex":
        return cls(parse_complex(text), name=name)

    @classmethod
    def read(cls, path) -> "FilteredComplex":
        with open(path) as fh:
            return cls.from_text(fh.read(), name=str(path))

    def to_text(self) -> str:
        out = io.StringIO()
        if self.name:
            out.write(f"# {self.name}\n")
        for cell in self.cells:
            faces = " ".join(_signed(f, c) for f, c in cell.boundary)
            out.write(f"{cell.id} {cell.dim} {json_number(cell.value)}{' ' + faces if faces else ''}\n")
        return out.getvalue()


def _signed(face: int, coeff: int) -> str:
    if abs(coeff) != 1:
        raise ValueError("the text format only carries unit coefficients")
    return f"{'+' if coeff > 0 else '-'}{face}"


def parse_complex(text: str) -> list:
    """Parse ``id dim value [signed face ids...]`` lines; ``#`` starts a comment."""
    cells = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 3:
            raise ValueError(f"line {lineno}: expected 'id dim value [faces...]'")
        try:
            cid, dim, value = int(tokens[0]), int(tokens[1]), float(tokens[2])
            boundary = []
            for tok in tokens[3:]:
                sign = -1 if tok.startswith("-") else 1
                boundary.append((int(tok.lstrip("+-")), sign))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if value < 0:
            raise ValueError(f"line {lineno}: negative filtration value {value}")
        cells.append(Cell(cid, dim, value, tuple(boundary)))
    return cells


def validate_filtration(c: FilteredComplex, tol: float = DEFAULT_TOL) -> list:
    """List every (cell, face) pair breaking closure, grading or monotonicity."""
    violations = []
    index = c.by_id
    for cell in c.cells:
        for face_id, _ in cell.boundary:
            face = index.get(face_id)
            if face is None:
                violations.append(Violation(cell.id, face_id, "missing face"))
            elif face.dim != cell.dim - 1:
                violations.append(Violation(cell.id, face_id, f"face has dim {face.dim}, expected {cell.dim - 1}"))
            elif face.value > cell.value + tol:
                violations.append(Violation(cell.id, face_id, f"face value {face.value} > {cell.value}"))
    return violations


def boundary_matrix(c: FilteredComplex, k: int, field: FieldSpec = GF2):
    """Matrix of d_k : C_k -> C_{k-1} over GF(q), rows/columns in listing order."""
    rows = c.cells_of_dim(k - 1)
    cols = c.cells_of_dim(k)
    index = {cell.id: i for i, cell in enumerate(rows)}
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, cell in enumerate(cols):
        for face, coeff in cell.boundary:
            M[index[face], j] = (M[index[face], j] + coeff) % field.q
    return M


@dataclass
class FreeChainComplex:
    """Chain complex with ``C_m = (+)_sigma k[f(sigma), inf)`` over GF(q)."""

    generators: dict
    boundaries: dict
    field: FieldSpec = GF2

    def summands(self, m: int) -> list:
        return [Interval(value, INF) for _, value in self.generators.get(m, [])]

    def ranks(self) -> tuple:
        top = max(self.generators, default=-1)
        return tuple(len(self.generators.get(m, [])) for m in range(top + 1))


def chain_complex_from_filtration(c: FilteredComplex, field: FieldSpec = GF2) -> FreeChainComplex:
    """One free summand per cell; boundary coefficients reduced mod q."""
    violations = validate_filtration(c)
    if violations:
        raise InvalidFiltrationError(violations)
    generators = {
        m: [(cell.id, cell.value) for cell in c.cells_of_dim(m)] for m in range(c.max_dim + 1)
    }
    boundaries = {m: boundary_matrix(c, m, field) for m in range(1, c.max_dim + 1)}
    for m in range(2, c.max_dim + 1):
        if np.any((boundaries[m - 1] @ boundaries[m]) % field.q):
            raise ValueError(f"boundary of boundary is nonzero in degree {m} over GF({field.q})")
    return FreeChainComplex(generators, boundaries, field)
