import json

from kunneth_ph.barcode import Barcode, multiset_close, pointwise_rank
from kunneth_ph.intervals import INF, Interval
from kunneth_ph.reduction import persistent_homology

from factories import triangle


def test_json_roundtrip_and_schema():
    bc = persistent_homology(triangle())
    data = json.loads(bc.dumps())
    assert data[1] == {"degree": 1, "bars": [{"birth": 5, "death": 6}]}
    assert data[0]["bars"][0] == {"birth": 0, "death": "inf"}
    assert Barcode.loads(bc.dumps()) == bc
    assert Barcode.from_json({"degree": 2, "bars": [{"birth": 1, "death": 2}]}).degree(2) == [Interval(1, 2)]


def test_zero_markers_and_empty_degrees():
    bc = Barcode({0: [None, Interval(1, 2)], 3: []})
    assert bc.degrees == [0]
    assert bc.degree(3) == []
    bc.add(1, None)
    assert bc.degrees == [0]


def test_pointwise_rank_examples():
    bc = persistent_homology(triangle())
    assert pointwise_rank(bc, 0, 2.5) == 3
    assert pointwise_rank(bc, 0, 3) == 2       # half-open: [1,3) has died at 3
    assert pointwise_rank(bc, 0, INF) == 1
    assert pointwise_rank(bc, 1, 5.5) == 1
    assert pointwise_rank(Barcode(), 0, 1) == 0


def test_multiset_close():
    A = [Interval(0, 1), Interval(0, 1 + 1e-12), Interval(2)]
    B = [Interval(2), Interval(0, 1), Interval(0, 1)]
    assert multiset_close(A, B)
    assert not multiset_close(A, B[:2])
    assert not multiset_close([Interval(0, 1)], [Interval(0, 1.1)])


def test_truncated():
    bc = persistent_homology(triangle())
    assert bc.truncated(0).degrees == [0]
