"""
Rooted bipartite maps encoded by a pair of rotation permutations.

Edges are labelled ``1..k``. ``sigma_white`` lists, one cycle per white
vertex, the counterclockwise order of edges around that vertex;
``sigma_black`` does the same for black vertices. Vertices are referred to
as ``("white", i)`` / ``("black", i)`` where ``i`` indexes the canonical
cycle list of the corresponding rotation.

Corners are named by the edge-end they follow counterclockwise. With the
labelling below, corner ``e`` is the white corner after edge ``e`` and
corner ``k + e`` the black one. Walking a face in the clockwise boundary
direction sends the corner after end ``d`` to the corner before the
opposite end of ``d``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidInputError, InvariantViolation
from .perm import Permutation, compose, cycle_decomposition, inverse, long_cycle

__all__ = [
    "RootedBipartiteMap",
    "Vertex",
    "DescendantRelation",
    "from_factorization",
    "face_corner_permutation",
    "genus",
    "is_expander",
    "descendants",
    "degree",
    "canonical_relabel",
]

Vertex = tuple[str, int]
WHITE, BLACK = "white", "black"


@dataclass(frozen=True)
class DescendantRelation:
    """Pairs ``(i, j)`` of white-vertex indices with ``w_i -> w_j``."""

    pairs: frozenset[tuple[int, int]]

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self.pairs

    def successors(self, i: int) -> set[int]:
        return {b for a, b in self.pairs if a == i}


@dataclass(frozen=True)
class RootedBipartiteMap:
    k: int
    sigma_white: Permutation
    sigma_black: Permutation
    root: int = 1
    black_weights: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.sigma_white.k != self.k or self.sigma_black.k != self.k:
            raise InvalidInputError("rotations must act on 1..k")
        if not 1 <= self.root <= self.k:
            raise InvalidInputError(f"root {self.root} outside 1..{self.k}")
        if self.black_weights is not None:
            weights = tuple(int(w) for w in self.black_weights)
            object.__setattr__(self, "black_weights", weights)
            if len(weights) != len(self.black_cycles):
                raise InvalidInputError(
                    f"{len(weights)} weights for {len(self.black_cycles)} black vertices"
                )
            if any(w < 1 for w in weights):
                raise InvalidInputError("weights must be positive")

    @cached_property
    def white_cycles(self) -> tuple[tuple[int, ...], ...]:
        return cycle_decomposition(self.sigma_white)

    @cached_property
    def black_cycles(self) -> tuple[tuple[int, ...], ...]:
        return cycle_decomposition(self.sigma_black)

    @cached_property
    def white_of(self) -> tuple[int, ...]:
        """``white_of[e - 1]`` is the index of the white endpoint of edge ``e``."""
        return _owner(self.k, self.white_cycles)

    @cached_property
    def black_of(self) -> tuple[int, ...]:
        return _owner(self.k, self.black_cycles)

    @property
    def n_white(self) -> int:
        return len(self.white_cycles)

    @property
    def n_black(self) -> int:
        return len(self.black_cycles)

    @property
    def n_vertices(self) -> int:
        return self.n_white + self.n_black

    @cached_property
    def n_faces(self) -> int:
        return len(cycle_decomposition(compose(self.sigma_white, self.sigma_black)))

    @cached_property
    def n_components(self) -> int:
        """Orbits of the group generated by both rotations."""
        parent = list(range(self.k + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p in (self.sigma_white, self.sigma_black):
            for x, y in enumerate(p.images, 1):
                parent[find(x)] = find(y)
        return len({find(x) for x in range(1, self.k + 1)})

    @property
    def genus(self) -> int:
        return genus(self)

    def key(self) -> tuple:
        """Hashable identity used for set comparisons of labelled maps."""
        return (self.sigma_white.images, self.sigma_black.images, self.root, self.black_weights)

    def white_neighbours(self, black_index: int) -> frozenset[int]:
        return frozenset(self.white_of[e - 1] for e in self.black_cycles[black_index])

    def with_weights(self, weights: Sequence[int] | None) -> RootedBipartiteMap:
        return RootedBipartiteMap(
            self.k, self.sigma_white, self.sigma_black, self.root,
            None if weights is None else tuple(weights),
        )

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "sigma_white": [list(c) for c in self.white_cycles],
            "sigma_black": [list(c) for c in self.black_cycles],
            "root": self.root,
            "black_weights": list(self.black_weights) if self.black_weights is not None else [],
        }

    @classmethod
    def from_json(cls, data: dict) -> RootedBipartiteMap:
        try:
            k = int(data["k"])
            white = Permutation.from_cycles(k, data["sigma_white"])
            black = Permutation.from_cycles(k, data["sigma_black"])
            weights = data.get("black_weights") or None
            return from_factorization(white, black, weights, int(data.get("root", 1)))
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed map JSON: {exc}") from None


def _owner(k: int, cycles: Iterable[Sequence[int]]) -> tuple[int, ...]:
    owner = [0] * k
    for i, cycle in enumerate(cycles):
        for e in cycle:
            owner[e - 1] = i
    return tuple(owner)


def from_factorization(
    sigma_white: Permutation,
    sigma_black: Permutation,
    weights: Sequence[int] | None = None,
    root: int = 1,
) -> RootedBipartiteMap:
    """Validated map from two rotations; one-black maps get the forced weight."""
    if sigma_white.k != sigma_black.k:
        raise InvalidInputError(f"size mismatch: {sigma_white.k} vs {sigma_black.k}")
    k = sigma_white.k
    if weights is None and sigma_black.cycle_count() == 1:
        weights = (sigma_white.cycle_count(),)
    m = RootedBipartiteMap(k, sigma_white, sigma_black, root,
                           None if weights is None else tuple(weights))
    genus(m)
    return m


def face_corner_permutation(m: RootedBipartiteMap) -> Permutation:
    """Clockwise boundary order on the ``2k`` corners (white ``e``, black ``k + e``)."""
    k = m.k
    w_inv = inverse(m.sigma_white).images
    b_inv = inverse(m.sigma_black).images
    images = [0] * (2 * k)
    for e in range(1, k + 1):
        images[e - 1] = k + b_inv[e - 1]
        images[k + e - 1] = w_inv[e - 1]
    return Permutation(tuple(images))


def genus(m: RootedBipartiteMap) -> int:
    """Total genus ``g`` from ``2c - 2g = V - k + F`` over ``c`` connected components."""
    chi = m.n_vertices - m.k + m.n_faces
    top = 2 * m.n_components
    if chi % 2 or chi > top:
        raise InvariantViolation(f"Euler characteristic {chi} gives no integer genus")
    return (top - chi) // 2


def degree(m: RootedBipartiteMap, vertex: Vertex) -> int:
    colour, index = vertex
    cycles = {WHITE: m.white_cycles, BLACK: m.black_cycles}.get(colour)
    if cycles is None or not 0 <= index < len(cycles):
        raise InvalidInputError(f"unknown vertex {vertex!r}")
    return len(cycles[index])


def is_expander(m: RootedBipartiteMap) -> bool:
    if m.n_faces != 1 or m.black_weights is None:
        return False
    weights = m.black_weights
    if sum(weights) != m.n_white:
        return False
    blacks = range(m.n_black)
    for size in range(1, m.n_black):
        for subset in itertools.combinations(blacks, size):
            neighbours = set().union(*(m.white_neighbours(b) for b in subset))
            if len(neighbours) <= sum(weights[b] for b in subset):
                return False
    return True


def descendants(m: RootedBipartiteMap) -> DescendantRelation:
    """``w_i -> w_j`` iff two clockwise boundary steps lead from a corner of ``w_i`` to one of ``w_j``."""
    if m.n_faces != 1:
        raise InvalidInputError("descendants are defined for one-face maps only")
    step = face_corner_permutation(m).images
    white_of = m.white_of
    pairs = set()
    for e in range(1, m.k + 1):
        target = step[step[e - 1] - 1]
        if target > m.k:
            raise InvariantViolation("double face step left the white corners")
        pairs.add((white_of[e - 1], white_of[target - 1]))
    return DescendantRelation(frozenset(pairs))


def canonical_relabel(
    m: RootedBipartiteMap, root: int | None = None
) -> tuple[RootedBipartiteMap, dict[int, int]]:
    """
    Relabel edges so that ``root`` becomes 1 and the boundary reads ``1..k``.

    Returns the relabelled map (with ``compose(sigma_white, sigma_black)``
    equal to the long cycle) and the old-to-new edge mapping. Black weights
    follow their vertices.
    """
    if m.n_faces != 1:
        raise InvalidInputError("canonical relabelling needs a one-face map")
    root = m.root if root is None else root
    boundary = compose(m.sigma_white, m.sigma_black)
    relabel: dict[int, int] = {}
    e = root
    for label in range(1, m.k + 1):
        relabel[e] = label
        e = boundary(e)

    def conj(p: Permutation) -> Permutation:
        images = [0] * m.k
        for x in range(1, m.k + 1):
            images[relabel[x] - 1] = relabel[p(x)]
        return Permutation(tuple(images))

    white, black = conj(m.sigma_white), conj(m.sigma_black)
    weights = None
    if m.black_weights is not None:
        by_edges = {
            frozenset(relabel[e] for e in cycle): w
            for cycle, w in zip(m.black_cycles, m.black_weights)
        }
        weights = tuple(by_edges[frozenset(c)] for c in cycle_decomposition(black))
    out = RootedBipartiteMap(m.k, white, black, 1, weights)
    if compose(white, black) != long_cycle(m.k):
        raise InvariantViolation("relabelled boundary is not the long cycle")
    return out, relabel
