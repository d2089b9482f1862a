"""Interval persistence modules and their closed-form l^p algebra.

An :class:`Interval` ``[birth, death)`` stands for the interval module
``k[birth, death)`` indexed by the nonnegative reals.  Operations that can
produce the zero module return ``None``; nothing degenerate is ever returned.

All four bifunctors (tensor, internal hom, Tor_1, Ext^1) are taken with
respect to the componentwise p-quasinorm ``||(a, b)||_p = (a^p + b^p)^(1/p)``
with ``p`` in ``(0, inf]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

INF = math.inf
DEFAULT_TOL = 1e-9

Number = Union[int, float]


class UnsupportedCaseError(ValueError):
    """An endpoint configuration for which no closed form is published."""


# --------------------------------------------------------------------------
# endpoints and exponents
# --------------------------------------------------------------------------

def parse_endpoint(value) -> float:
    """Parse a number or the strings ``inf``/``+inf``/``infinity``."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "+inf", "infinity", "+infinity", "∞"):
            return INF
        value = float(text)
    value = float(value)
    if math.isnan(value):
        raise ValueError("endpoint is NaN")
    if value < 0:
        raise ValueError(f"endpoints live in [0, inf], got {value}")
    return value


def check_p(p) -> float:
    """Validate a quasinorm exponent; returns it as a float (possibly inf)."""
    p = parse_endpoint(p) if isinstance(p, str) else float(p)
    if math.isnan(p) or p <= 0:
        raise ValueError(f"p must lie in (0, inf], got {p}")
    return p


def lp_combine(a: Number, b: Number, p: Number) -> float:
    """``||(a, b)||_p``; the sup norm for ``p = inf``, absorbing at infinity."""
    if a == INF or b == INF:
        return INF
    if p == INF:
        return float(max(a, b))
    if a == 0 or b == 0:
        # 0 is the unit; keep it exact rather than round-tripping through powers
        return float(a + b)
    if p == 1:
        return float(a + b)
    return (a ** p + b ** p) ** (1.0 / p)


def _pow(x: float, p: float) -> float:
    return INF if x == INF else x ** p


def _root(x: float, p: float) -> float:
    # x is a (possibly negative, possibly infinite) difference of p-th powers
    if x == INF:
        return INF
    if x <= 0:
        return 0.0
    return x ** (1.0 / p)


def _lp_diff(hi: float, lo: float, p: float) -> float:
    """``(max(0, hi^p - lo^p))^(1/p)`` with ``lo`` finite."""
    return _root(_pow(hi, p) - _pow(lo, p), p)


# --------------------------------------------------------------------------
# intervals
# --------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Interval:
    """A nonzero half-open interval ``[birth, death)`` with finite birth."""

    birth: float
    death: float = INF

    def __post_init__(self):
        birth = parse_endpoint(self.birth)
        death = parse_endpoint(self.death)
        if birth == INF:
            raise ValueError("birth must be finite")
        if not birth < death:
            raise ValueError(f"empty interval [{birth}, {death}); use make_interval")
        object.__setattr__(self, "birth", birth)
        object.__setattr__(self, "death", death)

    @property
    def is_free(self) -> bool:
        return self.death == INF

    @property
    def length(self) -> float:
        return self.death - self.birth

    def contains(self, t: float, tol: float = DEFAULT_TOL) -> bool:
        if t == INF:
            return self.death == INF
        return self.birth - tol <= t < self.death - tol

    def isclose(self, other: "Interval", tol: float = DEFAULT_TOL) -> bool:
        return _close(self.birth, other.birth, tol) and _close(self.death, other.death, tol)

    def to_json(self) -> dict:
        return {"birth": json_number(self.birth), "death": json_number(self.death)}

    @classmethod
    def from_json(cls, record: dict) -> "Interval":
        return cls(parse_endpoint(record["birth"]), parse_endpoint(record["death"]))

    def __repr__(self):
        death = "inf" if self.death == INF else f"{self.death:g}"
        return f"[{self.birth:g}, {death})"


def _close(x: float, y: float, tol: float) -> bool:
    if x == INF or y == INF:
        return x == y
    return abs(x - y) <= tol


def json_number(x: float):
    if x == INF:
        return "inf"
    if float(x).is_integer() and abs(x) < 2 ** 53:
        return int(x)
    return float(x)


def make_interval(birth: float, death: float, tol: float = DEFAULT_TOL) -> Optional[Interval]:
    """Normalize ``[birth, death)``: ``None`` for the zero module."""
    if birth < 0:
        if birth < -tol:
            raise ValueError(f"negative birth {birth}")
        birth = 0.0
    if birth == INF or not birth < death - tol:
        return None
    return Interval(birth, death)


def as_interval(value) -> Interval:
    if isinstance(value, Interval):
        return value
    birth, death = value
    return Interval(parse_endpoint(birth), parse_endpoint(death))


# --------------------------------------------------------------------------
# closed forms, one parameter
# --------------------------------------------------------------------------
# Each *_case function returns (interval-or-None, description of the case
# taken).  The public wrappers drop the description.

def tensor_lp_case(I, J, p, tol: float = DEFAULT_TOL):
    I, J, p = as_interval(I), as_interval(J), check_p(p)
    a, b, c, d = I.birth, I.death, J.birth, J.death
    birth = lp_combine(a, c, p)
    if I.is_free and J.is_free:
        return make_interval(birth, INF, tol), "free (x) free: [|(a,c)|_p, inf)"
    if I.is_free:
        return make_interval(birth, lp_combine(a, d, p), tol), "free (x) bar: [|(a,c)|_p, |(a,d)|_p)"
    if J.is_free:
        return make_interval(birth, lp_combine(b, c, p), tol), "bar (x) free: [|(a,c)|_p, |(b,c)|_p)"
    death = min(lp_combine(b, c, p), lp_combine(a, d, p))
    return make_interval(birth, death, tol), "bar (x) bar: [|(a,c)|_p, min(|(b,c)|_p, |(a,d)|_p))"


def tensor_lp(I, J, p, tol: float = DEFAULT_TOL) -> Optional[Interval]:
    """l^p tensor product of two interval modules."""
    return tensor_lp_case(I, J, p, tol)[0]


def tor1_lp_case(I, J, p, tol: float = DEFAULT_TOL):
    I, J, p = as_interval(I), as_interval(J), check_p(p)
    if p == INF:
        return None, "p = inf: every module is tensor-acyclic"
    if I.is_free or J.is_free:
        return None, "free factor"
    a, b, c, d = I.birth, I.death, J.birth, J.death
    birth = max(lp_combine(b, c, p), lp_combine(a, d, p))
    return (
        make_interval(birth, lp_combine(b, d, p), tol),
        "bar, bar: [max(|(b,c)|_p, |(a,d)|_p), |(b,d)|_p)",
    )


def tor1_lp(I, J, p, tol: float = DEFAULT_TOL) -> Optional[Interval]:
    """First derived l^p tensor product; zero for free factors and p = inf."""
    return tor1_lp_case(I, J, p, tol)[0]


def _lt(x: float, y: float, tol: float) -> bool:
    return x < y - tol


def _hom_sup_case(I: Interval, J: Interval, tol: float):
    a, b, c, d = I.birth, I.death, J.birth, J.death
    lt = lambda x, y: _lt(x, y, tol)  # noqa: E731
    le = lambda x, y: not _lt(y, x, tol)  # noqa: E731
    if J.is_free:
        if c > tol:
            raise UnsupportedCaseError(
                f"unsupported p=inf hom case: Hom({I}, {J}) with free target born after 0"
            )
        if I.is_free:
            return Interval(0.0, INF), "Hom(k[a,inf), k[R+]) = k[R+]"
        return None, "Hom(k[a,b), k[R+]) = 0"
    if I.is_free:
        if lt(a, c):
            return make_interval(c, d, tol), "a < c: k[c,d)"
        if lt(a, d):
            return make_interval(0.0, d, tol), "c <= a < d: k[0,d)"
        return None, "d <= a: 0"
    if lt(a, c):
        if le(b, c):
            return None, "a < b <= c < d: 0"
        if lt(b, d):
            return None, "a < c <= b < d: 0"
        return make_interval(c, d, tol), "a < c < d <= b: k[c,d)"
    if not lt(a, d):
        return None, "c < d <= a < b: 0"
    if lt(b, d):
        return None, "c <= a < b < d: 0"
    return make_interval(0.0, d, tol), "c <= a < d <= b: k[0,d)"


def hom_lp_case(I, J, p, tol: float = DEFAULT_TOL):
    I, J, p = as_interval(I), as_interval(J), check_p(p)
    if p == INF:
        return _hom_sup_case(I, J, tol)
    a, b, c, d = I.birth, I.death, J.birth, J.death
    if I.is_free and J.is_free:
        return make_interval(_lp_diff(c, a, p), INF, tol), "Hom(free, free): [(c^p-a^p)^(1/p), inf)"
    if I.is_free:
        return (
            make_interval(_lp_diff(c, a, p), _lp_diff(d, a, p), tol),
            "Hom(free, bar): [(c^p-a^p)^(1/p), (d^p-a^p)^(1/p))",
        )
    if J.is_free:
        return None, "Hom(bar, free) = 0"
    birth = max(_lp_diff(c, a, p), _lp_diff(d, b, p))
    return (
        make_interval(birth, _lp_diff(d, a, p), tol),
        "Hom(bar, bar): [max(0,c^p-a^p,d^p-b^p)^(1/p), max(0,d^p-a^p)^(1/p))",
    )


def hom_lp(I, J, p, tol: float = DEFAULT_TOL) -> Optional[Interval]:
    """l^p internal hom of two interval modules.

    Raises :class:`UnsupportedCaseError` for ``p = inf`` with a free target
    born after 0, which the published case tables do not cover.
    """
    return hom_lp_case(I, J, p, tol)[0]


def ext1_lp_case(I, J, p, tol: float = DEFAULT_TOL):
    I, J, p = as_interval(I), as_interval(J), check_p(p)
    a, b, c, d = I.birth, I.death, J.birth, J.death
    if I.is_free:
        return None, "projective first argument"
    if c <= tol:
        return None, "injective second argument"
    if p == INF:
        if J.is_free:
            raise UnsupportedCaseError(
                f"unsupported p=inf ext case: Ext^1({I}, {J}) with free target born after 0"
            )
        if _lt(a, c, tol) and not _lt(b, c, tol) and _lt(b, d, tol):
            return make_interval(0.0, c, tol), "a < c <= b < d: k[0,c)"
        return None, "p = inf, outside a < c <= b < d"
    birth = _lp_diff(c, b, p)
    death = min(_lp_diff(c, a, p), _lp_diff(d, b, p))
    return (
        make_interval(birth, death, tol),
        "[max(0,c^p-b^p)^(1/p), min(max(0,c^p-a^p), max(0,d^p-b^p))^(1/p))",
    )


def ext1_lp(I, J, p, tol: float = DEFAULT_TOL) -> Optional[Interval]:
    """First derived l^p internal hom; zero for a free first argument."""
    return ext1_lp_case(I, J, p, tol)[0]


# --------------------------------------------------------------------------
# hyper-rectangles in R^n_+
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class HyperRectangle:
    """A box ``[a_1,b_1) x ... x [a_n,b_n)``; every axis is nonzero."""

    axes: tuple

    def __post_init__(self):
        axes = tuple(as_interval(axis) for axis in self.axes)
        if not axes:
            raise ValueError("a hyper-rectangle needs at least one axis")
        object.__setattr__(self, "axes", axes)

    @property
    def dim(self) -> int:
        return len(self.axes)

    def contains(self, point: Sequence[float], tol: float = DEFAULT_TOL) -> bool:
        return all(axis.contains(t, tol) for axis, t in zip(self.axes, point))

    def __repr__(self):
        return " x ".join(repr(axis) for axis in self.axes)


def _axiswise(op, A: HyperRectangle, B: HyperRectangle, p, tol):
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    axes = []
    for I, J in zip(A.axes, B.axes):
        axis = op(I, J, p, tol)
        if axis is None:
            return None
        axes.append(axis)
    return HyperRectangle(tuple(axes))


def tensor_rect(A: HyperRectangle, B: HyperRectangle, p, tol: float = DEFAULT_TOL):
    """Componentwise l^p tensor of two box modules; ``None`` if any axis vanishes."""
    return _axiswise(tensor_lp, A, B, p, tol)


def hom_rect(A: HyperRectangle, B: HyperRectangle, p, tol: float = DEFAULT_TOL):
    """Componentwise l^p internal hom of two box modules."""
    return _axiswise(hom_lp, A, B, p, tol)
