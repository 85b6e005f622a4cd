"""
Exhaustive check of ``3|X_k| >= |Y_k|`` through the three sliding bijections.

``X_k`` are the one-face expanders with two black and two white vertices,
``Y_k`` those with one black and three white vertices. ``Y_k`` is split by
the descendant relation into odd/even/rest parts, each part is lifted to a
set ``T`` of decorated maps, and the sliding bijections compare ``X_k``
with every ``T``. Nothing here assumes a relation holds: both sides are
counted and compared.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal

from .enumeration import count_linear, count_square, enumerate_X, enumerate_Y
from .errors import InvalidInputError, InvariantViolation
from .perm import MAX_K
from .rmap import RootedBipartiteMap, canonical_relabel, degree, descendants, is_expander
from .sliding import BLACK, WHITE, Direction, Embedding, SlidingConfig, residual_structure, slide, validate

__all__ = [
    "YClassification",
    "TElement",
    "VerificationReport",
    "classify_map",
    "classify_Y",
    "build_T",
    "label_X",
    "bijection_to_T_odd",
    "bijection_to_T_even",
    "bijection_three",
    "inverse_bijection",
    "verify_chain",
]

log = logging.getLogger(__name__)

Reading = Literal["pinned", "literal"]
NONE, CW, CCW = Direction.NONE, Direction.CW, Direction.CCW


@dataclass(frozen=True)
class YClassification:
    odd_witnesses: frozenset[int]
    even_witnesses: frozenset[int]

    @property
    def is_odd(self) -> bool:
        return bool(self.odd_witnesses)

    @property
    def is_even(self) -> bool:
        return bool(self.even_witnesses)

    @property
    def is_rest(self) -> bool:
        return not (self.odd_witnesses or self.even_witnesses)


@dataclass(frozen=True)
class TElement:
    """A ``Y_k`` map with distinguished white vertex ``w3`` and tagged special edges.

    ``directions`` holds ``(edge, tag at white end, tag at black end)``
    sorted by edge; the special edges are exactly those listed there.
    """

    map: RootedBipartiteMap
    w3: int
    family: str
    directions: tuple[tuple[int, Direction, Direction], ...]

    @property
    def special_edges(self) -> frozenset[int]:
        return frozenset(e for e, _, _ in self.directions)

    def key(self) -> tuple:
        return (self.map.key(), self.w3, tuple((e, a.value, b.value) for e, a, b in self.directions))

    def config(self) -> SlidingConfig:
        # from_map puts side 0 at the white end
        return SlidingConfig.from_map(self.map, self.special_edges, {e: (a, b) for e, a, b in self.directions})


def classify_map(m: RootedBipartiteMap) -> YClassification:
    if m.n_black != 1 or m.n_white != 3:
        raise InvalidInputError("classification needs one black and three white vertices")
    rel = descendants(m)
    odd, even = set(), set()
    for w in range(3):
        others = [o for o in range(3) if o != w]
        if all((w, o) in rel for o in others):
            (odd if degree(m, (WHITE, w)) % 2 else even).add(w)
    return YClassification(frozenset(odd), frozenset(even))


def classify_Y(k: int, maps: Iterable[RootedBipartiteMap] | None = None, **kwargs) -> list[tuple[RootedBipartiteMap, YClassification]]:
    if maps is None:
        maps = enumerate_Y(k, 4, **kwargs)
    return [(m, classify_map(m)) for m in maps]


def _t_directions(m: RootedBipartiteMap, edges: Iterable[int], at_black: dict[int, Direction]) -> tuple:
    return tuple(sorted((e, NONE, at_black[e]) for e in edges))


def _rest_assignments(m: RootedBipartiteMap, w3: int) -> Iterator[dict[int, Direction]]:
    """Valid tags on the black ends of the edges of ``w3`` (cw block before ccw block per corner)."""
    edges = m.white_cycles[w3]
    probe = SlidingConfig.from_map(m, edges, {e: (NONE, CCW) for e in edges})
    res = residual_structure(probe)
    groups = [
        [d[0] for d in res.contents[c]]
        for c in res.corners
        if any(d[1] == 1 for d in res.contents[c])
    ]
    for splits in itertools.product(*(range(len(g) + 1) for g in groups)):
        tags = {}
        for group, cut in zip(groups, splits):
            for i, e in enumerate(group):
                tags[e] = CW if i < cut else CCW
        yield tags


def build_T(
    k: int,
    family: str,
    reading: Reading = "pinned",
    classified: list[tuple[RootedBipartiteMap, YClassification]] | None = None,
) -> list[TElement]:
    """
    Elements of ``T_k^odd``, ``T_k^even`` or ``T_k^rest``.

    Under the pinned reading a ``T^rest`` vertex has odd degree at least 3 and
    at least two clockwise tags; the literal reading allows degree 1 and zero
    clockwise tags.
    """
    if family not in ("odd", "even", "rest"):
        raise InvalidInputError(f"unknown family {family!r}")
    if classified is None:
        classified = classify_Y(k)
    out = []
    for m, cls in classified:
        if family in ("odd", "even"):
            witnesses = cls.odd_witnesses if family == "odd" else cls.even_witnesses
            for w in sorted(witnesses):
                edges = m.white_cycles[w]
                out.append(TElement(m, w, family, _t_directions(m, edges, {e: CW for e in edges})))
            continue
        if not cls.is_rest:
            continue
        for w in range(m.n_white):
            deg = degree(m, (WHITE, w))
            if deg % 2 == 0 or (reading == "pinned" and deg < 3):
                continue
            for tags in _rest_assignments(m, w):
                n_cw = sum(t is CW for t in tags.values())
                if n_cw % 2 or (reading == "pinned" and n_cw < 2):
                    continue
                out.append(TElement(m, w, "rest", _t_directions(m, tags, tags)))
    return out


@dataclass(frozen=True)
class XLabels:
    b1: int  # odd degree
    b2: int
    w1: int  # even number of edges to b1
    w2: int


def label_X(x: RootedBipartiteMap) -> XLabels:
    if not (x.n_black == 2 and x.n_white == 2 and x.black_weights == (1, 1) and is_expander(x)):
        raise InvalidInputError("map is not in X_k")
    if x.k % 2 == 0:
        raise InvalidInputError("X_k is empty for even k")
    b1 = 0 if len(x.black_cycles[0]) % 2 else 1
    to_w0 = sum(1 for e in x.black_cycles[b1] if x.white_of[e - 1] == 0)
    w1 = 0 if to_w0 % 2 == 0 else 1
    return XLabels(b1, 1 - b1, w1, 1 - w1)


def _slide_recolour(
    x: RootedBipartiteMap, black: int, white_tags: dict[int, Direction], family: str
) -> TElement:
    """Slide the edges of one black vertex with the given tags on their white ends, then recolour it."""
    edges = x.black_cycles[black]
    config = SlidingConfig.from_map(x, edges, {e: (white_tags[x.white_of[e - 1]], NONE) for e in edges})
    out = slide(config)
    emb = out.embedding
    v = emb.vertex_of[(edges[0], 1)]
    other = next(i for i, c in enumerate(emb.colours) if c == BLACK and i != v)
    emb = emb.recolour(v, WHITE).with_weights([3 if i == other else None for i in range(len(emb.colours))])
    m, relabel = canonical_relabel(emb.to_map(), x.root)
    w3 = m.white_of[relabel[edges[0]] - 1]
    dirs = []
    for e in edges:
        tag_white_side, tag_black_side = out.directions[e]
        # side 1 stayed at the recoloured vertex, side 0 now sits at the black vertex
        dirs.append((relabel[e], tag_black_side, tag_white_side))
    return TElement(m, w3, family, tuple(sorted(dirs)))


def bijection_to_T_odd(x: RootedBipartiteMap) -> TElement:
    lab = label_X(x)
    return _slide_recolour(x, lab.b1, {lab.w1: CCW, lab.w2: CCW}, "odd")


def bijection_to_T_even(x: RootedBipartiteMap) -> TElement:
    lab = label_X(x)
    return _slide_recolour(x, lab.b2, {lab.w1: CCW, lab.w2: CCW}, "even")


def bijection_three(x: RootedBipartiteMap) -> TElement:
    lab = label_X(x)
    return _slide_recolour(x, lab.b1, {lab.w1: CCW, lab.w2: CW}, "three")


def inverse_bijection(t: TElement) -> RootedBipartiteMap:
    """Slide a decorated ``Y_k`` map back and recolour ``w3`` black."""
    config = t.config()
    if validate(config):
        raise InvalidInputError("decorated map is not a valid sliding configuration")
    out = slide(config).embedding
    e0 = t.directions[0][0]
    v = out.vertex_of[(e0, 0)]
    emb = out.recolour(v, BLACK, 1)
    emb = emb.with_weights([1 if c == BLACK else None for c in emb.colours])
    m, _ = canonical_relabel(emb.to_map(), t.map.root)
    return m


@dataclass
class Relation:
    name: str
    lhs: int
    rhs: int
    op: str
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "op": self.op, "pass": self.passed}


def _compare(name: str, lhs: int, rhs: int, op: str) -> Relation:
    ok = {"==": lhs == rhs, ">=": lhs >= rhs}[op]
    return Relation(name, lhs, rhs, op, ok)


@dataclass
class VerificationReport:
    k: int
    counts: dict[str, int] = field(default_factory=dict)
    relations: list[Relation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def slack(self) -> int:
        return 3 * self.counts.get("X", 0) - self.counts.get("Y", 0)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.relations)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "counts": dict(self.counts),
            "relations": [r.to_json() for r in self.relations],
            "slack": self.slack,
            "pass": self.passed,
            "notes": list(self.notes),
        }

    def table(self) -> str:
        lines = [f"k = {self.k}"]
        for name, value in self.counts.items():
            lines.append(f"  |{name}| = {value}")
        for r in self.relations:
            lines.append(f"  {'PASS' if r.passed else 'FAIL'}  {r.name}: {r.lhs} {r.op} {r.rhs}")
        lines.extend(f"  note: {n}" for n in self.notes)
        lines.append(f"  slack 3|X| - |Y| = {self.slack}: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def verify_chain(k: int, *, workers: int = 1, cap: int = MAX_K, bijections: bool = True) -> VerificationReport:
    """Count every set in the proof chain at ``k`` and check each step."""
    report = VerificationReport(k)
    if k % 2 == 0:
        report.notes.append("even k: a one-face map with 4 vertices needs odd k (2-2g = 5-k), all sets empty")
        x_count = sum(1 for _ in enumerate_X(k, 2, 2, workers=workers, cap=cap))
        report.counts.update({"X": x_count, "Y": count_linear(k, 4, workers=workers, cap=cap)})
        report.relations.append(_compare("X_k empty", x_count, 0, "=="))
        report.relations.append(_compare("slack >= 0", report.slack, 0, ">="))
        return report

    xs = list(enumerate_X(k, 2, 2, workers=workers, cap=cap))
    ys = list(enumerate_Y(k, 4, workers=workers, cap=cap))
    classified = classify_Y(k, ys)
    t_odd = build_T(k, "odd", classified=classified)
    t_even = build_T(k, "even", classified=classified)
    t_rest = build_T(k, "rest", "pinned", classified)
    t_rest_literal = build_T(k, "rest", "literal", classified)

    y_odd = sum(c.is_odd for _, c in classified)
    y_even = sum(c.is_even for _, c in classified)
    y_rest = sum(c.is_rest for _, c in classified)
    y_both = sum(c.is_odd and c.is_even for _, c in classified)
    X, Y = len(xs), len(ys)
    report.counts.update({
        "X": X, "Y": Y,
        "Y_odd": y_odd, "Y_even": y_even, "Y_rest": y_rest, "Y_odd_and_even": y_both,
        "T_odd": len(t_odd), "T_even": len(t_even), "T_rest": len(t_rest),
        "T_rest_literal": len(t_rest_literal),
    })

    # permutation route against the map route
    perm_x, perm_y = count_square(k, 2, 2, workers=workers, cap=cap), count_linear(k, 4, workers=workers, cap=cap)
    rel = report.relations
    rel.append(_compare("3[C2^2]L_k = 3[R2^2]K_k - [R4]K_k = 3|X_k| - |Y_k|", 3 * perm_x - perm_y, 3 * X - Y, "=="))
    rel.append(_compare("|X_k| = |T_odd|", X, len(t_odd), "=="))
    rel.append(_compare("|X_k| = |T_even|", X, len(t_even), "=="))
    rel.append(_compare("|X_k| >= |T_rest|", X, len(t_rest), ">="))
    rel.append(_compare("|T_odd| >= |Y_odd|", len(t_odd), y_odd, ">="))
    rel.append(_compare("|T_even| >= |Y_even|", len(t_even), y_even, ">="))
    rel.append(_compare("|T_rest| >= |Y_rest|", len(t_rest), y_rest, ">="))
    rel.append(_compare("|Y_odd| + |Y_even| + |Y_rest| - |Y_k| = |Y_odd & Y_even|", y_odd + y_even + y_rest - Y, y_both, "=="))
    step2 = len(t_odd) + len(t_even) + len(t_rest) - Y
    step3 = y_odd + y_even + y_rest - Y
    rel.append(_compare("3|X_k| - |Y_k| >= |T_odd| + |T_even| + |T_rest| - |Y_k|", 3 * X - Y, step2, ">="))
    rel.append(_compare("|T_odd| + |T_even| + |T_rest| - |Y_k| >= |Y_odd| + |Y_even| + |Y_rest| - |Y_k|", step2, step3, ">="))
    rel.append(_compare("|Y_odd & Y_even| >= 0", y_both, 0, ">="))
    rel.append(_compare("3|X_k| - |Y_k| >= 0", 3 * X - Y, 0, ">="))

    rest_ok = sum(
        1 for m, c in classified
        if c.is_rest and any(len(w) % 2 and len(w) >= 3 for w in m.white_cycles)
    )
    rel.append(_compare("every Y_rest map has a white vertex of odd degree >= 3", rest_ok, y_rest, "=="))

    if bijections:
        _bijection_relations(report, xs, t_odd, t_even, t_rest)
    return report


def _bijection_relations(report: VerificationReport, xs, t_odd, t_even, t_rest) -> None:
    rel = report.relations
    for name, fn, target in (("odd", bijection_to_T_odd, t_odd), ("even", bijection_to_T_even, t_even)):
        images = [fn(x) for x in xs]
        image_keys = {t.key() for t in images}
        target_keys = {t.key() for t in target}
        rel.append(_compare(f"bijection {name}: distinct images", len(image_keys), len(xs), "=="))
        rel.append(_compare(f"bijection {name}: image = T_{name} (common elements)",
                            len(image_keys & target_keys), len(target_keys | image_keys), "=="))
        round_trips = sum(inverse_bijection(t).key() == x.key() for t, x in zip(images, xs))
        rel.append(_compare(f"bijection {name}: round trips", round_trips, len(xs), "=="))
    images = [bijection_three(x) for x in xs]
    three_keys = {(t.map.key(), t.w3, t.directions) for t in images}
    rest_keys = {(t.map.key(), t.w3, t.directions) for t in t_rest}
    rel.append(_compare("bijection three: distinct images", len(three_keys), len(xs), "=="))
    rel.append(_compare("bijection three: T_rest covered", len(rest_keys & three_keys), len(rest_keys), "=="))
    in_odd = sum(1 for t in images if classify_map(t.map).is_odd)
    report.counts["three_images_in_T_rest"] = len(rest_keys & three_keys)
    report.counts["three_images_on_Y_odd_maps"] = in_odd
