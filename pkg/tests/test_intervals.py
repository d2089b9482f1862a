import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kunneth_ph.intervals import (
    INF,
    HyperRectangle,
    Interval,
    UnsupportedCaseError,
    ext1_lp,
    ext1_lp_case,
    hom_lp,
    hom_rect,
    lp_combine,
    make_interval,
    parse_endpoint,
    tensor_lp,
    tensor_rect,
    tor1_lp,
)

from factories import random_interval
from oracles import ext_dims, hom_dims, interval_dims, tensor_dims, tor_dims

PS = [0.5, 1, 2, INF]


def iv(a, b=INF):
    return Interval(a, b)


def same(x, y, tol=1e-9):
    if x is None or y is None:
        return x is None and y is None
    return x.isclose(y, tol)


# ---------------------------------------------------------------- endpoints

def test_lp_combine_examples():
    assert lp_combine(3, 4, 2) == pytest.approx(5)
    assert lp_combine(2, 7, INF) == 7
    assert lp_combine(5, INF, 1) == INF


magnitudes = st.one_of(st.just(0.0), st.floats(1e-100, 1e3))


@given(magnitudes, magnitudes, st.sampled_from([0.5, 1, 2, 3.5, INF]))
def test_lp_combine_symmetric_and_dominates(a, b, p):
    v = lp_combine(a, b, p)
    assert v == lp_combine(b, a, p)
    assert v >= max(a, b) * (1 - 1e-12)


def test_parse_endpoint():
    assert parse_endpoint("inf") == INF
    assert parse_endpoint(" 2.5 ") == 2.5
    with pytest.raises(ValueError):
        parse_endpoint(-1)
    with pytest.raises(ValueError):
        parse_endpoint("nan")


def test_interval_rejects_empty_and_normalizes():
    with pytest.raises(ValueError):
        Interval(3, 3)
    assert make_interval(2, 2 + 1e-12) is None
    assert make_interval(-1e-12, 1) == Interval(0, 1)
    assert make_interval(INF, INF) is None


def test_interval_json_roundtrip():
    for x in (iv(1, 3), iv(0.25), iv(2, 7.5)):
        assert Interval.from_json(x.to_json()) == x
    assert iv(2).to_json() == {"birth": 2, "death": "inf"}


# ---------------------------------------------------------------- examples

@pytest.mark.parametrize("I, J, p, expected", [
    (iv(1, 3), iv(2, 4), INF, iv(2, 3)),
    (iv(0, 2), iv(1, 5), 1, iv(1, 3)),
    (iv(3), iv(4), 2, iv(5)),
])
def test_tensor_examples(I, J, p, expected):
    assert same(tensor_lp(I, J, p), expected)


def test_tor_examples():
    assert same(tor1_lp(iv(1, 2), iv(1, 2), 1), iv(3, 4))
    for p in PS:
        assert tor1_lp(iv(1), iv(0, 3), p) is None
        assert tor1_lp(iv(0, 3), iv(2), p) is None
    assert tor1_lp(iv(1, 2), iv(1, 2), INF) is None


@pytest.mark.parametrize("I, J, p, expected", [
    (iv(1, 3), iv(2, 5), 1, iv(2, 4)),
    (iv(1, 4), iv(2, 3), INF, iv(2, 3)),
    (iv(3), iv(5), 2, iv(4)),
])
def test_hom_examples(I, J, p, expected):
    assert same(hom_lp(I, J, p), expected)


def test_ext_examples():
    assert same(ext1_lp(iv(0, 1), iv(2, 3), 1), iv(1, 2))
    assert same(ext1_lp(iv(1, 3), iv(2, 4), INF), iv(0, 2))
    for p in PS:
        assert ext1_lp(iv(1), iv(2, 3), p) is None
    assert ext1_lp_case(iv(1), iv(2, 3), 2)[1] == "projective first argument"
    assert ext1_lp_case(iv(1, 2), iv(0, 3), 2)[1] == "injective second argument"


def test_sup_hom_case_table():
    # a < c < d <= b is the only finite-bar case with a nonzero answer besides c <= a < d <= b
    assert same(hom_lp(iv(0, 10), iv(2, 5), INF), iv(2, 5))
    assert same(hom_lp(iv(3, 10), iv(2, 5), INF), iv(0, 5))
    assert hom_lp(iv(0, 3), iv(2, 5), INF) is None
    assert hom_lp(iv(3, 4), iv(2, 5), INF) is None
    assert hom_lp(iv(6, 7), iv(2, 5), INF) is None
    assert same(hom_lp(iv(1), iv(2, 5), INF), iv(2, 5))
    assert same(hom_lp(iv(3), iv(2, 5), INF), iv(0, 5))
    assert same(hom_lp(iv(3), iv(0), INF), iv(0))
    assert hom_lp(iv(3, 4), iv(0), INF) is None


def test_sup_unsupported_cases_raise():
    with pytest.raises(UnsupportedCaseError, match="unsupported p=inf hom case"):
        hom_lp(iv(1, 3), iv(2), INF)
    with pytest.raises(UnsupportedCaseError, match="unsupported p=inf ext case"):
        ext1_lp(iv(1, 3), iv(2), INF)


def test_invalid_p():
    with pytest.raises(ValueError):
        tensor_lp(iv(0, 1), iv(0, 1), 0)
    with pytest.raises(ValueError):
        tensor_lp(iv(0, 1), iv(0, 1), -2)


# ---------------------------------------------------------------- rectangles

def test_tensor_rect_examples():
    A = HyperRectangle(((1, 3), (0, 2)))
    B = HyperRectangle(((2, 4), (1, 5)))
    out = tensor_rect(A, B, INF)
    assert out.axes == (iv(2, 3), iv(1, 2))
    assert tensor_rect(HyperRectangle(((0, 1), (0, 1))), HyperRectangle(((5, 6), (0, 1))), INF) is None
    unit = HyperRectangle(((0, INF), (0, INF)))
    B = HyperRectangle(((1.5, 4), (2, 3)))
    for p in PS:
        out = tensor_rect(unit, B, p)
        assert all(x.isclose(y) for x, y in zip(out.axes, B.axes))


def test_hom_rect_examples():
    A = HyperRectangle(((1, 3), (1, 3)))
    B = HyperRectangle(((2, 5), (2, 5)))
    assert hom_rect(A, B, 1).axes == (iv(2, 4), iv(2, 4))
    unit = HyperRectangle(((0, INF),) * 3)
    assert hom_rect(unit, unit, 2) == unit
    out = hom_rect(HyperRectangle(((0, 1), (0, 1))), HyperRectangle(((5, 6), (0, 1))), 1)
    assert out.axes == (iv(5, 6), iv(0, 1))


def test_rect_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension mismatch"):
        tensor_rect(HyperRectangle(((0, 1),)), HyperRectangle(((0, 1), (0, 1))), 1)


def test_rect_axiswise_oracle():
    rng = random.Random(7)
    for _ in range(20):
        A = HyperRectangle(tuple(random_interval(rng, 0) for _ in range(2)))
        B = HyperRectangle(tuple(random_interval(rng, 0) for _ in range(2)))
        out = tensor_rect(A, B, INF)
        grid = np.arange(0, 14.5, 0.5)
        per_axis = []
        for I, J in zip(A.axes, B.axes):
            _, dims = tensor_dims((I.birth, I.death), (J.birth, J.death), INF, grid)
            per_axis.append(dims)
        product = np.outer(*per_axis)
        if out is None:
            assert not product.any()
        else:
            expected = np.outer(*(interval_dims(ax, grid) for ax in out.axes))
            assert (product == expected).all()


# ---------------------------------------------------------------- invariants

endpoint = st.integers(0, 20).map(lambda k: k / 2)


@st.composite
def intervals(draw, allow_free=True):
    a = draw(endpoint)
    if allow_free and draw(st.booleans()) and draw(st.booleans()):
        return iv(a)
    return iv(a, a + draw(st.integers(1, 16)) / 2)


@settings(max_examples=300)
@given(intervals(), intervals(), st.sampled_from(PS))
def test_symmetry(I, J, p):
    assert same(tensor_lp(I, J, p), tensor_lp(J, I, p))
    assert same(tor1_lp(I, J, p), tor1_lp(J, I, p))


@settings(max_examples=300)
@given(intervals(), intervals(), st.sampled_from(PS))
def test_birth_dominance(I, J, p):
    out = tensor_lp(I, J, p)
    if out is None:
        return
    lower = max(I.birth, J.birth)
    assert out.birth >= lower - 1e-9
    if p == INF:
        assert out.birth == lower
    elif min(I.birth, J.birth) > 0:
        assert out.birth > lower


@settings(max_examples=300)
@given(intervals(), intervals())
def test_sup_tensor_is_intersection_formula(I, J):
    a, b, c, d = I.birth, I.death, J.birth, J.death
    expected = make_interval(max(a, c), min(max(b, c), max(a, d)))
    assert same(tensor_lp(I, J, INF), expected)


@settings(max_examples=300)
@given(intervals(), intervals(), st.sampled_from(PS))
def test_outputs_are_normalized(I, J, p):
    for op in (tensor_lp, tor1_lp, hom_lp, ext1_lp):
        try:
            out = op(I, J, p)
        except UnsupportedCaseError:
            continue
        assert out is None or out.birth < out.death - 1e-9


@settings(max_examples=200)
@given(intervals(allow_free=False), intervals(allow_free=False), st.sampled_from([0.5, 1, 2, 3]))
def test_resolution_consistency(I, J, p):
    """Tor/Ext from the closed forms vs. the length-one resolutions, pointwise."""
    a, b = I.birth, I.death
    c, d = J.birth, J.death
    grid = np.unique(np.concatenate([np.arange(0, 40.5, 0.5), [lp_combine(x, y, p)
                     for x in (a, b, c, d) for y in (a, b, c, d)]]))
    # 0 -> k[b,inf) -> k[a,inf) -> I -> 0, tensored with J: Tor_1 is the kernel
    t_src = tensor_lp(iv(b), J, p)
    t_tgt = tensor_lp(iv(a), J, p)
    tor = tor1_lp(I, J, p)
    ten = tensor_lp(I, J, p)
    # exactness: dim Tor - dim src + dim tgt - dim tensor = 0 pointwise
    alt = (interval_dims(tor, grid) - interval_dims(t_src, grid)
           + interval_dims(t_tgt, grid) - interval_dims(ten, grid))
    assert not alt.any()
    # 0 -> J -> k[0,d) -> k[0,c) -> 0 under Hom(I, -): Ext is the cokernel at the end
    if c > 0:
        h0 = hom_lp(I, J, p)
        h1 = hom_lp(I, iv(0, d), p)
        h2 = hom_lp(I, iv(0, c), p)
        ext = ext1_lp(I, J, p)
        alt = (interval_dims(h0, grid) - interval_dims(h1, grid)
               + interval_dims(h2, grid) - interval_dims(ext, grid))
        assert not alt.any()


# ---------------------------------------------------------------- oracles

ORACLES = {
    "tensor": (tensor_lp, tensor_dims),
    "tor": (tor1_lp, tor_dims),
    "hom": (hom_lp, hom_dims),
    "ext": (ext1_lp, ext_dims),
}


@pytest.mark.parametrize("op", sorted(ORACLES))
@pytest.mark.parametrize("p", PS)
def test_grid_oracle_agreement(op, p):
    closed, oracle = ORACLES[op]
    rng = random.Random(hash((op, str(p))) % 2 ** 32)
    grid = np.arange(0, 16.5, 0.5)
    checked = 0
    for _ in range(40):
        I, J = random_interval(rng, top=6), random_interval(rng, top=6)
        try:
            out = closed(I, J, p)
        except UnsupportedCaseError:
            continue
        g, dims = oracle(I, J, p, grid)
        assert (dims == interval_dims(out, g)).all(), (op, I, J, p)
        checked += 1
    assert checked >= 20


def test_oracle_reproduces_spec_grid_values():
    grid = np.arange(0, 8.5, 0.5)
    _, dims = tensor_dims((1, 3), (2, 4), INF, grid)
    assert list(grid[dims == 1]) == [2.0, 2.5]
    _, dims = ext_dims((0, 1), (2, 3), 1, grid)
    assert list(grid[dims == 1]) == [1.0, 1.5]
    assert math.isclose(lp_combine(3, 4, 2), 5)
