import itertools

import pytest
from hypothesis import given, strategies as st

from kerovmaps.enumeration import enumerate_X, enumerate_Y
from kerovmaps.errors import InvalidInputError
from kerovmaps.perm import (
    Permutation,
    compose,
    enumerate_symmetric_group,
    identity,
    inverse,
    long_cycle,
    parse_cycles,
)
from kerovmaps.rmap import (
    RootedBipartiteMap,
    canonical_relabel,
    degree,
    descendants,
    face_corner_permutation,
    from_factorization,
    genus,
    is_expander,
)


def star():
    return from_factorization(identity(3), long_cycle(3), [3], 1)


def edge():
    return from_factorization(long_cycle(1), long_cycle(1), [1], 1)


def one_face_maps(k):
    for w in enumerate_symmetric_group(k):
        yield from_factorization(w, compose(inverse(w), long_cycle(k)))


def test_star():
    m = star()
    assert (m.n_white, m.n_black, m.n_faces, m.genus) == (3, 1, 1, 0)
    assert degree(m, ("black", 0)) == 3
    assert is_expander(m)
    fc = face_corner_permutation(m)
    assert len(fc.cycles()) == 1 and fc.k == 6
    cycle = fc.cycles()[0]
    assert all((a <= 3) != (b <= 3) for a, b in zip(cycle, cycle[1:] + cycle[:1]))


def test_single_edge():
    m = edge()
    assert (m.n_vertices, m.n_faces, genus(m)) == (2, 1, 0)
    assert face_corner_permutation(m).images == (2, 1)
    assert degree(m, ("white", 0)) == degree(m, ("black", 0)) == 1


def test_forced_weight_and_validation():
    assert star().black_weights == (3,)
    with pytest.raises(InvalidInputError):
        RootedBipartiteMap(3, identity(3), long_cycle(3), 1, (1, 2))
    with pytest.raises(InvalidInputError):
        RootedBipartiteMap(3, identity(3), long_cycle(3), 4, (3,))
    with pytest.raises(InvalidInputError):
        from_factorization(identity(2), identity(3))
    with pytest.raises(InvalidInputError):
        degree(star(), ("black", 1))


def test_genus_examples():
    x5 = list(enumerate_X(5, 2, 2))
    assert x5 and all(m.n_vertices == 4 and m.n_faces == 1 and m.genus == 1 for m in x5)
    x7 = next(iter(enumerate_X(7, 2, 2)))
    assert (x7.n_vertices, x7.k, x7.n_faces, x7.genus) == (4, 7, 1, 2)


def test_expander_examples():
    # b1 = {1} meets only w1 = {1, 2}
    m = from_factorization(parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3), [1, 1])
    assert m.n_faces == 1 and not is_expander(m)
    for x in enumerate_X(5, 2, 2):
        assert is_expander(x)
        assert all(len(x.white_neighbours(b)) == 2 for b in range(2))
        assert degree(x, ("black", 0)) + degree(x, ("black", 1)) == x.k
    assert not is_expander(star().with_weights([2]))
    assert not is_expander(star().with_weights(None))


def test_descendants_of_star_form_a_three_cycle():
    rel = descendants(star())
    assert len(rel.pairs) == 3
    assert all(len(rel.successors(i)) == 1 for i in range(3))
    seen, i = [], 0
    for _ in range(3):
        seen.append(i)
        (i,) = rel.successors(i)
    assert sorted(seen) == [0, 1, 2] and i == 0


def test_descendants_on_Y5():
    for m in enumerate_Y(5, 4):
        rel = descendants(m)
        hub = any(rel.successors(i) >= {j for j in range(3) if j != i} for i in range(3))
        cyc = any(
            (a, b) in rel and (b, c) in rel and (c, a) in rel
            for a, b, c in itertools.permutations(range(3))
        )
        assert hub or cyc


def test_self_descendant():
    # one white vertex of degree 2 between two black leaves
    m = from_factorization(long_cycle(2), identity(2), [1, 1])
    assert (0, 0) in descendants(m)


def test_descendants_need_one_face():
    m = from_factorization(long_cycle(2), long_cycle(2))
    assert m.n_faces == 2
    with pytest.raises(InvalidInputError):
        descendants(m)


@pytest.mark.parametrize("k", range(1, 8))
def test_face_permutation_alternates(k):
    for w in itertools.islice(enumerate_symmetric_group(k), 200):
        for b in itertools.islice(enumerate_symmetric_group(k), 0, 720, 37):
            fc = face_corner_permutation(from_factorization(w, b))
            assert all((x <= k) != (fc(x) <= k) for x in range(1, 2 * k + 1))


@pytest.mark.parametrize("k", range(1, 7))
def test_one_face_iff_long_cycle(k):
    lc = long_cycle(k)
    for w in enumerate_symmetric_group(k):
        for b in enumerate_symmetric_group(k) if k <= 4 else [compose(inverse(w), lc), inverse(w)]:
            m = from_factorization(w, b)
            single = len(face_corner_permutation(m).cycles()) == 1
            assert single == (m.n_faces == 1)
            if compose(w, b) == lc:
                assert single
                # boundary reads 1..k
                assert canonical_relabel(m)[1] == {e: e for e in range(1, k + 1)}


perm_pairs = st.integers(1, 7).flatmap(
    lambda k: st.tuples(st.permutations(range(1, k + 1)), st.permutations(range(1, k + 1)))
)


@given(perm_pairs)
def test_genus_is_a_nonnegative_integer(pair):
    w, b = (Permutation(tuple(x)) for x in pair)
    assert genus(from_factorization(w, b)) >= 0


@given(st.integers(1, 7).flatmap(lambda k: st.tuples(st.permutations(range(1, k + 1)), st.integers(1, k))))
def test_canonical_relabel(data):
    images, root = data
    k = len(images)
    w = Permutation(tuple(images))
    m = from_factorization(w, compose(inverse(w), long_cycle(k)), root=root)
    out, relabel = canonical_relabel(m)
    assert relabel[root] == 1 and out.root == 1
    assert compose(out.sigma_white, out.sigma_black) == long_cycle(k)
    assert out.n_white == m.n_white and out.genus == m.genus


@pytest.mark.parametrize("k", [3, 5])
def test_json_round_trip(k):
    for m in enumerate_X(k, 2, 2):
        assert RootedBipartiteMap.from_json(m.to_json()).key() == m.key()
    for m in one_face_maps(k):
        assert RootedBipartiteMap.from_json(m.to_json()).key() == m.key()
    with pytest.raises(InvalidInputError):
        RootedBipartiteMap.from_json({"k": 2})
