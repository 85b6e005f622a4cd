import itertools

import pytest

from kerovmaps.enumeration import enumerate_X, enumerate_Y
from kerovmaps.errors import InvalidInputError
from kerovmaps.proof import (
    bijection_three,
    bijection_to_T_even,
    bijection_to_T_odd,
    build_T,
    classify_Y,
    classify_map,
    inverse_bijection,
    label_X,
    verify_chain,
)
from kerovmaps.rmap import degree, descendants
from kerovmaps.sliding import Direction

CW, NONE, CCW = Direction.CW, Direction.NONE, Direction.CCW


@pytest.fixture(scope="module", params=[5, 7])
def data(request):
    k = request.param
    classified = classify_Y(k)
    return {
        "k": k,
        "xs": list(enumerate_X(k, 2, 2)),
        "classified": classified,
        "odd": build_T(k, "odd", classified=classified),
        "even": build_T(k, "even", classified=classified),
        "rest": build_T(k, "rest", classified=classified),
    }


def shape(m):
    """Rotation data up to rerooting: cycle types of both rotations."""
    return (tuple(sorted(map(len, m.white_cycles))), tuple(sorted(map(len, m.black_cycles))))


def test_classification_k5():
    classified = classify_Y(5)
    assert len(classified) == 15
    counts = [sum(getattr(c, a) for _, c in classified) for a in ("is_odd", "is_even", "is_rest")]
    assert counts == [5, 5, 5]
    assert sum(c.is_odd and c.is_even for _, c in classified) == 0


@pytest.mark.parametrize("k", [5, 7])
def test_rest_maps_have_odd_vertex(k):
    for m, c in classify_Y(k):
        if c.is_rest:
            assert any(len(w) % 2 and len(w) >= 3 for w in m.white_cycles)


@pytest.mark.parametrize("k", [5, 7])
def test_descendant_sanity(k):
    for m in enumerate_Y(k, 4):
        rel = descendants(m)
        hub = any(all((w, o) in rel for o in range(3) if o != w) for w in range(3))
        cyc = any((a, b) in rel and (b, c) in rel and (c, a) in rel for a, b, c in itertools.permutations(range(3)))
        assert hub or cyc


def test_T_sets_k5():
    t = {f: build_T(5, f) for f in ("odd", "even", "rest")}
    assert [len(t[f]) for f in ("odd", "even", "rest")] == [5, 5, 5]
    for f in t:
        shapes = {(shape(e.map), degree(e.map, ("white", e.w3))) for e in t[f]}
        assert len(shapes) == 1, f
    assert len(build_T(5, "rest", "literal")) == 20


def test_T_direction_rules(data):
    for f in ("odd", "even"):
        for t in data[f]:
            assert t.special_edges == frozenset(t.map.white_cycles[t.w3])
            assert all(a is NONE and b is CW for _, a, b in t.directions)
            assert degree(t.map, ("white", t.w3)) % 2 == (f == "odd")
    for t in data["rest"]:
        tags = [b for _, a, b in t.directions]
        assert all(a is NONE for _, a, _ in t.directions)
        assert tags.count(CW) % 2 == 0 and tags.count(CW) >= 2
        assert tags.count(CCW) % 2 == 1


@pytest.mark.parametrize("family,fn", [("odd", bijection_to_T_odd), ("even", bijection_to_T_even)])
def test_colour_bijections(data, family, fn):
    images = [fn(x) for x in data["xs"]]
    assert {t.key() for t in images} == {t.key() for t in data[family]}
    assert len({t.key() for t in images}) == len(data["xs"])
    for t, x in zip(images, data["xs"]):
        assert inverse_bijection(t).key() == x.key()
        deg = degree(t.map, ("white", t.w3))
        assert deg % 2 == (family == "odd")
        assert all((t.w3, o) in descendants(t.map) for o in range(3) if o != t.w3)


def test_bijection_three(data):
    images = [bijection_three(x) for x in data["xs"]]
    keys = {(t.map.key(), t.w3, t.directions) for t in images}
    assert len(keys) == len(data["xs"])
    rest = {(t.map.key(), t.w3, t.directions) for t in data["rest"]}
    assert rest <= keys
    for x, t in zip(data["xs"], images):
        lab = label_X(x)
        k1 = sum(1 for e in x.black_cycles[lab.b1] if x.white_of[e - 1] == lab.w1)
        k2 = len(x.black_cycles[lab.b1]) - k1
        tags = [b for _, _, b in t.directions]
        assert (tags.count(CW), tags.count(CCW)) == (k1, k2)
        assert k1 % 2 == 0 and k1 >= 2 and k2 % 2 == 1


def test_label_X_rejects_non_members():
    y = next(iter(enumerate_Y(5, 4)))
    with pytest.raises(InvalidInputError):
        label_X(y)
    with pytest.raises(InvalidInputError):
        classify_map(next(iter(enumerate_X(5, 2, 2))))


@pytest.mark.parametrize("k,slack", [(5, 0), (7, 203)])
def test_verify_chain(k, slack):
    report = verify_chain(k)
    assert report.passed, report.table()
    assert report.slack == slack
    data = report.to_json()
    assert data["slack"] == slack and data["pass"] is True
    assert {"name", "lhs", "rhs", "op", "pass"} <= set(data["relations"][0])


def test_verify_chain_even_k():
    report = verify_chain(6)
    assert report.passed and report.counts["X"] == 0 and report.notes
