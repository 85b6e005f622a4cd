"""
Edge sliding on embedded graphs.

A configuration is an embedded graph (a rotation system: the
counterclockwise cyclic order of edge-ends around every vertex), a set of
special edges and, for each special edge, a direction tag on each of its two
ends. Removing the special edges leaves the residual graph; every special
end sits in a residual corner, and the slide moves clockwise-tagged ends to
the next residual corner along the clockwise boundary and
counterclockwise-tagged ends to the previous one, then flips all tags.

Ends are darts ``(edge, side)``; side 0 is the end that started at a white
vertex and side 1 the one at a black vertex. Sides are identities, not
colours: after a slide an end may sit at a vertex of either colour.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InvalidInputError, InvariantViolation
from .perm import Permutation, compose, inverse
from .rmap import RootedBipartiteMap, from_factorization

__all__ = [
    "Direction",
    "Dart",
    "Embedding",
    "SlidingConfig",
    "ResidualStructure",
    "Violation",
    "residual_structure",
    "validate",
    "slide",
    "random_valid_config",
    "PropertyReport",
    "check_properties",
]

Dart = tuple[int, int]
WHITE, BLACK = "white", "black"


class Direction(str, enum.Enum):
    CW = "cw"
    NONE = "none"
    CCW = "ccw"

    @property
    def rank(self) -> int:
        return _RANK[self]

    def flipped(self) -> Direction:
        return {Direction.CW: Direction.CCW, Direction.CCW: Direction.CW}.get(self, self)


_RANK = {Direction.CW: 0, Direction.NONE: 1, Direction.CCW: 2}


def _rotate_to_min(rotation: Sequence[Dart]) -> tuple[Dart, ...]:
    if not rotation:
        return ()
    i = min(range(len(rotation)), key=rotation.__getitem__)
    return tuple(rotation[i:]) + tuple(rotation[:i])


@dataclass(frozen=True)
class Embedding:
    """Rotation system with coloured vertices; rotations are stored from their least dart."""

    k: int
    rotations: tuple[tuple[Dart, ...], ...]
    colours: tuple[str, ...]
    weights: tuple[int | None, ...]
    root: int = 1

    def __post_init__(self) -> None:
        rotations = tuple(_rotate_to_min([tuple(d) for d in r]) for r in self.rotations)
        object.__setattr__(self, "rotations", rotations)
        object.__setattr__(self, "colours", tuple(self.colours))
        object.__setattr__(self, "weights", tuple(self.weights))
        darts = sorted(d for r in rotations for d in r)
        expected = [(e, s) for e in range(1, self.k + 1) for s in (0, 1)]
        if darts != expected:
            raise InvalidInputError("every edge needs exactly two ends")
        if len(self.colours) != len(rotations) or len(self.weights) != len(rotations):
            raise InvalidInputError("one colour and one weight slot per vertex")
        if any(c not in (WHITE, BLACK) for c in self.colours):
            raise InvalidInputError(f"bad colours {self.colours}")

    @cached_property
    def vertex_of(self) -> dict[Dart, int]:
        return {d: v for v, r in enumerate(self.rotations) for d in r}

    @cached_property
    def _next(self) -> dict[Dart, Dart]:
        return {r[i]: r[(i + 1) % len(r)] for r in self.rotations for i in range(len(r))}

    @cached_property
    def _prev(self) -> dict[Dart, Dart]:
        return {b: a for a, b in self._next.items()}

    def next(self, d: Dart) -> Dart:
        return self._next[d]

    def prev(self, d: Dart) -> Dart:
        return self._prev[d]

    @staticmethod
    def alpha(d: Dart) -> Dart:
        return (d[0], 1 - d[1])

    def corner_step(self, d: Dart) -> Dart:
        """Clockwise boundary step on corners named by the dart they follow."""
        return self.prev(self.alpha(d))

    def face_count(self) -> int:
        seen: set[Dart] = set()
        faces = 0
        for d in self._next:
            if d in seen:
                continue
            faces += 1
            while d not in seen:
                seen.add(d)
                d = self.corner_step(d)
        return faces

    def is_bipartite(self) -> bool:
        return all(
            self.colours[self.vertex_of[(e, 0)]] != self.colours[self.vertex_of[(e, 1)]]
            for e in range(1, self.k + 1)
        )

    def edges_at(self, v: int) -> list[int]:
        return [e for e, _ in self.rotations[v]]

    def recolour(self, v: int, colour: str, weight: int | None = None) -> Embedding:
        colours = list(self.colours)
        weights = list(self.weights)
        colours[v] = colour
        weights[v] = weight if colour == BLACK else None
        return Embedding(self.k, self.rotations, colours, weights, self.root)

    def with_weights(self, weights: Sequence[int | None]) -> Embedding:
        return Embedding(self.k, self.rotations, self.colours, weights, self.root)

    @classmethod
    def from_map(cls, m: RootedBipartiteMap) -> Embedding:
        rotations = [tuple((e, 0) for e in c) for c in m.white_cycles]
        rotations += [tuple((e, 1) for e in c) for c in m.black_cycles]
        colours = [WHITE] * m.n_white + [BLACK] * m.n_black
        bw = m.black_weights if m.black_weights is not None else (None,) * m.n_black
        weights = [None] * m.n_white + list(bw)
        return cls(m.k, tuple(rotations), tuple(colours), tuple(weights), m.root)

    def to_map(self) -> RootedBipartiteMap:
        """Read off the white/black rotations; requires every edge to join two colours."""
        if not self.is_bipartite():
            raise InvalidInputError("embedding has an edge between equal colours")
        white = [[e for e, _ in r] for r, c in zip(self.rotations, self.colours) if c == WHITE]
        black_pairs = [(r, w) for r, c, w in zip(self.rotations, self.colours, self.weights) if c == BLACK]
        black = [[e for e, _ in r] for r, _ in black_pairs]
        sw = Permutation.from_cycles(self.k, white)
        sb = Permutation.from_cycles(self.k, black)
        weights = [w for _, w in black_pairs]
        # weights are listed per canonical black cycle
        order = sorted(range(len(black)), key=lambda i: min(black[i]))
        ws = None if any(w is None for w in weights) else [weights[i] for i in order]
        return from_factorization(sw, sb, ws, self.root)

    def to_json(self) -> dict:
        """Map-schema JSON; an end whose side does not match its vertex colour is written ``-e``."""
        def signed(d: Dart, colour: str) -> int:
            own = 0 if colour == WHITE else 1
            return d[0] if d[1] == own else -d[0]

        white = [[signed(d, WHITE) for d in r] for r, c in zip(self.rotations, self.colours) if c == WHITE]
        black = [[signed(d, BLACK) for d in r] for r, c in zip(self.rotations, self.colours) if c == BLACK]
        weights = [w for w, c in zip(self.weights, self.colours) if c == BLACK]
        return {
            "k": self.k,
            "sigma_white": white,
            "sigma_black": black,
            "root": self.root,
            "black_weights": [] if any(w is None for w in weights) else weights,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Embedding:
        try:
            k = int(data["k"])
            rotations, colours, weights = [], [], []
            black_weights = list(data.get("black_weights") or [])
            blacks = data["sigma_black"]
            if black_weights and len(black_weights) != len(blacks):
                raise InvalidInputError("weight count does not match black vertices")
            for colour, cycles in ((WHITE, data["sigma_white"]), (BLACK, blacks)):
                own = 0 if colour == WHITE else 1
                for i, cycle in enumerate(cycles):
                    rotations.append(tuple((abs(int(x)), own if int(x) > 0 else 1 - own) for x in cycle))
                    colours.append(colour)
                    weights.append(black_weights[i] if colour == BLACK and black_weights else None)
            return cls(k, tuple(rotations), tuple(colours), tuple(weights), int(data.get("root", 1)))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInputError):
                raise
            raise InvalidInputError(f"malformed embedding JSON: {exc}") from None


@dataclass(frozen=True)
class SlidingConfig:
    embedding: Embedding
    special_edges: frozenset[int]
    # edge -> (tag on side 0, tag on side 1)
    directions: Mapping[int, tuple[Direction, Direction]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        special = frozenset(int(e) for e in self.special_edges)
        object.__setattr__(self, "special_edges", special)
        dirs = {int(e): (Direction(a), Direction(b)) for e, (a, b) in self.directions.items()}
        for e in special:
            dirs.setdefault(e, (Direction.NONE, Direction.NONE))
        object.__setattr__(self, "directions", dict(sorted(dirs.items())))

    @classmethod
    def from_map(cls, m: RootedBipartiteMap, special: Iterable[int] = (), directions=None) -> SlidingConfig:
        return cls(Embedding.from_map(m), frozenset(special), dict(directions or {}))

    def direction(self, d: Dart) -> Direction:
        return self.directions[d[0]][d[1]]

    def key(self) -> tuple:
        return (self.embedding, self.special_edges, tuple(self.directions.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SlidingConfig):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def to_json(self) -> dict:
        out = self.embedding.to_json()
        out["special_edges"] = sorted(self.special_edges)
        out["directions"] = [
            {"edge": e, "white": a.value, "black": b.value} for e, (a, b) in self.directions.items()
        ]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> SlidingConfig:
        emb = Embedding.from_json(data)
        special = frozenset(int(e) for e in data.get("special_edges", []))
        dirs = {}
        try:
            for item in data.get("directions", []):
                dirs[int(item["edge"])] = (Direction(item["white"]), Direction(item["black"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed directions: {exc}") from None
        unknown = (set(dirs) | special) - set(range(1, emb.k + 1))
        if unknown:
            raise InvalidInputError(f"unknown edges {sorted(unknown)}")
        extra = set(dirs) - special
        if extra:
            raise InvalidInputError(f"directions given for non-special edges {sorted(extra)}")
        return cls(emb, special, dirs)


Corner = tuple  # ("d", dart) for a corner after a surviving dart, ("v", vertex) for a full angle


@dataclass(frozen=True)
class ResidualStructure:
    corners: tuple[Corner, ...]
    sigma_res: Mapping[Corner, Corner]
    contents: Mapping[Corner, tuple[Dart, ...]]

    @cached_property
    def sigma_res_inv(self) -> dict[Corner, Corner]:
        return {b: a for a, b in self.sigma_res.items()}

    def cycles(self) -> list[list[Corner]]:
        seen, out = set(), []
        for c in self.corners:
            if c in seen:
                continue
            cyc = []
            while c not in seen:
                seen.add(c)
                cyc.append(c)
                c = self.sigma_res[c]
            out.append(cyc)
        return out

    @property
    def face_count(self) -> int:
        return len(self.cycles())

    def as_permutation(self) -> Permutation:
        """``sigma_res`` on corners numbered ``1..n`` in ``corners`` order."""
        index = {c: i for i, c in enumerate(self.corners, 1)}
        return Permutation(tuple(index[self.sigma_res[c]] for c in self.corners))


def residual_structure(config: SlidingConfig) -> ResidualStructure:
    emb = config.embedding
    special = config.special_edges
    corners: list[Corner] = []
    contents: dict[Corner, tuple[Dart, ...]] = {}
    prev_res: dict[Dart, Dart] = {}
    for v, rotation in enumerate(emb.rotations):
        survivors = [i for i, d in enumerate(rotation) if d[0] not in special]
        if not survivors:
            corner = ("v", v)
            corners.append(corner)
            contents[corner] = rotation
            continue
        n = len(rotation)
        for a, i in enumerate(survivors):
            j = survivors[(a + 1) % len(survivors)]
            corner = ("d", rotation[i])
            corners.append(corner)
            span = (j - i - 1) % n if len(survivors) > 1 else n - 1
            contents[corner] = tuple(rotation[(i + t) % n] for t in range(1, span + 1))
            prev_res[rotation[j]] = rotation[i]
    sigma = {}
    for corner in corners:
        if corner[0] == "v":
            sigma[corner] = corner
        else:
            sigma[corner] = ("d", prev_res[Embedding.alpha(corner[1])])
    return ResidualStructure(tuple(corners), sigma, contents)


@dataclass(frozen=True)
class Violation:
    corner: Corner | None
    rule: str
    detail: str


def _cyclically_sorted(ranks: Sequence[int]) -> bool:
    n = len(ranks)
    return sum(ranks[i] > ranks[(i + 1) % n] for i in range(n)) <= 1


def validate(config: SlidingConfig) -> list[Violation]:
    """Empty list when the configuration may be slid."""
    violations: list[Violation] = []
    for e, pair in config.directions.items():
        if e not in config.special_edges:
            violations.append(Violation(None, "direction-pair", f"edge {e} is not special"))
        if len(pair) != 2:
            violations.append(Violation(None, "direction-pair", f"edge {e} needs two tags"))
    if violations:
        return violations
    res = residual_structure(config)
    for corner in res.corners:
        ranks = [config.direction(d).rank for d in res.contents[corner]]
        ok = _cyclically_sorted(ranks) if corner[0] == "v" else ranks == sorted(ranks)
        if not ok:
            violations.append(Violation(corner, "ordering", f"tags out of order: {ranks}"))
    for corner in res.corners:
        has_cw = any(config.direction(d) is Direction.CW for d in res.contents[corner])
        nxt = res.sigma_res[corner]
        has_ccw = any(config.direction(d) is Direction.CCW for d in res.contents[nxt])
        if has_cw and has_ccw:
            violations.append(Violation(corner, "forbidden-pattern", f"cw end here and ccw end in {nxt}"))
    return violations


def slide(config: SlidingConfig) -> SlidingConfig:
    violations = validate(config)
    if violations:
        raise InvalidInputError(f"configuration cannot be slid: {violations}")
    emb = config.embedding
    res = residual_structure(config)
    tag = config.direction

    new_contents: dict[Corner, tuple[Dart, ...]] = {}
    for corner in res.corners:
        here = res.contents[corner]
        if corner[0] == "v":
            new_contents[corner] = here
            continue
        from_next = [d for d in res.contents[res.sigma_res[corner]] if tag(d) is Direction.CCW]
        stay = [d for d in here if tag(d) is Direction.NONE]
        from_prev = [d for d in res.contents[res.sigma_res_inv[corner]] if tag(d) is Direction.CW]
        new_contents[corner] = tuple(from_next + stay + from_prev)

    rotations = []
    for v, rotation in enumerate(emb.rotations):
        survivors = [d for d in rotation if d[0] not in config.special_edges]
        if not survivors:
            rotations.append(new_contents[("v", v)])
            continue
        out: list[Dart] = []
        for d in survivors:
            out.append(d)
            out.extend(new_contents[("d", d)])
        rotations.append(tuple(out))

    new_emb = Embedding(emb.k, tuple(rotations), emb.colours, emb.weights, emb.root)
    flipped = {e: (a.flipped(), b.flipped()) for e, (a, b) in config.directions.items()}
    return SlidingConfig(new_emb, config.special_edges, flipped)


def _connected(emb: Embedding) -> bool:
    parent = list(range(len(emb.rotations)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(1, emb.k + 1):
        a, b = find(emb.vertex_of[(e, 0)]), find(emb.vertex_of[(e, 1)])
        parent[a] = b
    return len({find(v) for v in range(len(parent))}) == 1


def _sort_corners(config: SlidingConfig) -> SlidingConfig:
    """Reorder special ends inside each residual corner into cw, none, ccw order."""
    res = residual_structure(config)
    emb = config.embedding
    rank = lambda d: config.direction(d).rank  # noqa: E731
    rotations = []
    for v, rotation in enumerate(emb.rotations):
        survivors = [d for d in rotation if d[0] not in config.special_edges]
        if not survivors:
            rotations.append(tuple(sorted(res.contents[("v", v)], key=rank)))
            continue
        out: list[Dart] = []
        for d in survivors:
            out.append(d)
            out.extend(sorted(res.contents[("d", d)], key=rank))
        rotations.append(tuple(out))
    new_emb = Embedding(emb.k, tuple(rotations), emb.colours, emb.weights, emb.root)
    return SlidingConfig(new_emb, config.special_edges, config.directions)


MAX_ATTEMPTS = 10_000
DIRECTION_DRAWS = 50


def random_valid_config(k: int, seed: int) -> SlidingConfig:
    """Deterministic pseudorandom valid configuration on a connected bipartite map."""
    if not 1 <= k <= 8:
        raise InvalidInputError("random configurations are generated for 1 <= k <= 8")
    rng = random.Random(f"{seed}:{k}")
    tags = list(Direction)
    for _ in range(MAX_ATTEMPTS):
        white, black = list(range(1, k + 1)), list(range(1, k + 1))
        rng.shuffle(white)
        rng.shuffle(black)
        emb = Embedding.from_map(from_factorization(Permutation(tuple(white)), Permutation(tuple(black))))
        if not _connected(emb):
            continue
        density = rng.random()
        special = frozenset(e for e in range(1, k + 1) if rng.random() < density)
        for _ in range(DIRECTION_DRAWS):
            dirs = {e: (rng.choice(tags), rng.choice(tags)) for e in special}
            config = _sort_corners(SlidingConfig(emb, special, dirs))
            if not validate(config):
                return config
    raise InvariantViolation(f"no valid configuration found for k={k}, seed={seed}")


@dataclass
class PropertyReport:
    cases: int
    involution_failures: list[int] = field(default_factory=list)
    face_failures: list[int] = field(default_factory=list)
    validity_failures: list[int] = field(default_factory=list)
    special_edges: int = 0

    @property
    def passed(self) -> bool:
        return not (self.involution_failures or self.face_failures or self.validity_failures)

    def to_json(self) -> dict:
        return {
            "cases": self.cases,
            "involution_failures": self.involution_failures,
            "face_failures": self.face_failures,
            "validity_failures": self.validity_failures,
            "special_edges": self.special_edges,
            "pass": self.passed,
        }


def check_properties(cases: int, seed: int, max_k: int = 8) -> PropertyReport:
    """Slide ``cases`` generated configs (``k`` cycling through ``1..max_k``) twice each."""
    report = PropertyReport(cases)
    for case in range(cases):
        config = random_valid_config(case % max_k + 1, seed + case)
        report.special_edges += len(config.special_edges)
        once = slide(config)
        if validate(once):
            report.validity_failures.append(case)
            continue
        if once.embedding.face_count() != config.embedding.face_count():
            report.face_failures.append(case)
        if slide(once) != config:
            report.involution_failures.append(case)
    return report
