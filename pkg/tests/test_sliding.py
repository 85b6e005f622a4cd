import json

import pytest
from hypothesis import given, settings, strategies as st

from kerovmaps.enumeration import enumerate_X
from kerovmaps.errors import InvalidInputError
from kerovmaps.perm import Permutation, identity, long_cycle
from kerovmaps.proof import label_X
from kerovmaps.rmap import face_corner_permutation, from_factorization
from kerovmaps.sliding import (
    Direction,
    Embedding,
    SlidingConfig,
    check_properties,
    random_valid_config,
    residual_structure,
    slide,
    validate,
)

CW, NONE, CCW = Direction.CW, Direction.NONE, Direction.CCW


def star(k=3):
    return from_factorization(identity(k), long_cycle(k), [k])


def x5():
    return list(enumerate_X(5, 2, 2))


def bijection_one_config(x):
    lab = label_X(x)
    edges = x.black_cycles[lab.b1]
    return SlidingConfig.from_map(x, edges, {e: (CCW, NONE) for e in edges}), lab


def test_residual_without_special_edges_is_the_face_permutation():
    m = x5()[0]
    res = residual_structure(SlidingConfig.from_map(m))
    assert len(res.corners) == 2 * m.k
    assert res.face_count == m.n_faces == 1
    # corner after dart (e, 0) is white corner e, after (e, 1) black corner k + e
    index = {("d", (e, s)): e + s * m.k for e in range(1, m.k + 1) for s in (0, 1)}
    fc = face_corner_permutation(m)
    assert all(index[res.sigma_res[c]] == fc(index[c]) for c in res.corners)


def test_residual_with_all_edges_of_one_black_vertex():
    for x in x5():
        lab = label_X(x)
        config = SlidingConfig.from_map(x, x.black_cycles[lab.b1])
        res = residual_structure(config)
        isolated = [c for c in res.corners if c[0] == "v"]
        assert len(isolated) == 1
        assert res.sigma_res[isolated[0]] == isolated[0]
        # what is left is a star around b2 plus the isolated b1
        assert res.face_count == 2


def test_residual_of_a_special_single_edge():
    m = from_factorization(long_cycle(1), long_cycle(1), [1])
    res = residual_structure(SlidingConfig.from_map(m, {1}))
    assert len(res.corners) == 2 and all(res.sigma_res[c] == c for c in res.corners)
    assert res.as_permutation().is_identity()


def test_validate_examples():
    for x in x5():
        config, _ = bijection_one_config(x)
        assert validate(config) == []
    bad = SlidingConfig.from_map(star(), {1, 2}, {1: (NONE, NONE), 2: (NONE, CW)})
    assert [v.rule for v in validate(bad)] == ["ordering"]
    m = from_factorization(Permutation.from_cycles(3, [(2, 3)]), Permutation.from_cycles(3, [(1, 3)]), [1, 1])
    bad = SlidingConfig.from_map(m, {1, 2}, {1: (CW, CW), 2: (CCW, CW)})
    assert [v.rule for v in validate(bad)] == ["forbidden-pattern"]
    with pytest.raises(InvalidInputError):
        slide(bad)


def test_undirected_slide_changes_nothing():
    m = x5()[2]
    config = SlidingConfig.from_map(m, {1, 3}, {1: (NONE, NONE), 3: (NONE, NONE)})
    assert slide(config) == config
    assert slide(SlidingConfig.from_map(m)) == SlidingConfig.from_map(m)


def test_bijection_one_config_moves_b1_onto_b2_neighbours():
    for x in x5():
        config, lab = bijection_one_config(x)
        out = slide(config)
        emb = out.embedding
        b1_vertex = emb.vertex_of[(x.black_cycles[lab.b1][0], 1)]
        b2_vertex = emb.vertex_of[(x.black_cycles[lab.b2][0], 1)]
        for e in x.black_cycles[lab.b1]:
            assert emb.vertex_of[(e, 1)] == b1_vertex
            assert emb.vertex_of[(e, 0)] == b2_vertex
        assert out.directions == {e: (CW, NONE) for e in x.black_cycles[lab.b1]}
        assert emb.face_count() == 1
        assert slide(out) == config


def test_generator_is_deterministic_and_valid():
    assert random_valid_config(5, 42) == random_valid_config(5, 42)
    samples = [random_valid_config(i % 8 + 1, i) for i in range(1000)]
    assert all(validate(c) == [] for c in samples)
    assert any(not c.special_edges for c in samples)
    empty = next(c for c in samples if not c.special_edges)
    assert slide(empty) == empty
    with pytest.raises(InvalidInputError):
        random_valid_config(9, 0)


def test_property_suite():
    report = check_properties(1000, 42)
    assert report.passed, report.to_json()
    assert report.special_edges > 1000


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**63 - 1))
def test_slide_properties(k, seed):
    config = random_valid_config(k, seed)
    out = slide(config)
    assert validate(out) == []
    assert slide(out) == config
    emb, new = config.embedding, out.embedding
    assert new.face_count() == emb.face_count()
    assert len(new.rotations) == len(emb.rotations) and new.colours == emb.colours
    assert out.special_edges == config.special_edges
    for e, (a, b) in config.directions.items():
        assert out.directions[e] == (a.flipped(), b.flipped())
    for e in range(1, k + 1):
        if e not in config.special_edges or config.directions[e] == (NONE, NONE):
            assert all(new.vertex_of[(e, s)] == emb.vertex_of[(e, s)] for s in (0, 1))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10**6))
def test_json_round_trip(k, seed):
    config = random_valid_config(k, seed)
    out = slide(config)
    for c in (config, out):
        text = json.dumps(c.to_json())
        assert SlidingConfig.from_json(json.loads(text)) == c


def test_json_errors():
    data = SlidingConfig.from_map(star(), {1}, {1: (CW, NONE)}).to_json()
    assert data["directions"] == [{"edge": 1, "white": "cw", "black": "none"}]
    broken = dict(data, directions=[{"edge": 2, "white": "cw", "black": "none"}])
    with pytest.raises(InvalidInputError):
        SlidingConfig.from_json(broken)
    broken = dict(data, directions=[{"edge": 1, "white": "up", "black": "none"}])
    with pytest.raises(InvalidInputError):
        SlidingConfig.from_json(broken)
    with pytest.raises(InvalidInputError):
        Embedding.from_json({"k": 2, "sigma_white": [[1]], "sigma_black": [[1, 2]]})
