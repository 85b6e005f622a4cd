"""
Permutations of ``{1, ..., k}`` in one-line notation.

Points are 1-based throughout. Composition applies the right factor first:
``compose(p, q)(x) == p(q(x))``.

>>> p = Permutation.from_cycles(4, [[1, 2], [3, 4]])
>>> str(p)
'(1 2)(3 4)'
>>> str(compose(long_cycle(3), long_cycle(3)))
'(1 3 2)'
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InvalidInputError, ResourceLimitError

__all__ = [
    "MAX_K",
    "Permutation",
    "compose",
    "inverse",
    "cycle_decomposition",
    "cycle_count",
    "long_cycle",
    "identity",
    "enumerate_symmetric_group",
    "parse_cycles",
]

# 12! is about 4.8e8, the desk-scale ceiling
MAX_K = 12

Cycles = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``{1..k}``; ``images[x - 1]`` is the image of ``x``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if not images:
            raise InvalidInputError("a permutation needs k >= 1 points")
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidInputError(f"not a bijection on 1..{len(images)}: {images}")

    @property
    def k(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __str__(self) -> str:
        cycles = [c for c in cycle_decomposition(self) if len(c) > 1]
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self.images})"

    @classmethod
    def from_cycles(cls, k: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build a permutation of ``{1..k}``; omitted points are fixed."""
        images = list(range(1, k + 1))
        seen: set[int] = set()
        for cycle in cycles:
            for i, x in enumerate(cycle):
                if not 1 <= x <= k or x in seen:
                    raise InvalidInputError(f"bad or repeated point {x} in cycles for k={k}")
                seen.add(x)
                images[x - 1] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    def cycles(self) -> Cycles:
        return cycle_decomposition(self)

    def cycle_count(self) -> int:
        return cycle_count(self.images)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, 1))


def identity(k: int) -> Permutation:
    return Permutation(tuple(range(1, k + 1)))


def long_cycle(k: int) -> Permutation:
    """The cycle ``1 -> 2 -> ... -> k -> 1``."""
    if k < 1:
        raise InvalidInputError("k must be positive")
    return Permutation(tuple(range(2, k + 1)) + (1,))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``r`` with ``r(x) = p(q(x))``."""
    if p.k != q.k:
        raise InvalidInputError(f"size mismatch: {p.k} vs {q.k}")
    pi = p.images
    return Permutation(tuple(pi[y - 1] for y in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.k
    for x, y in enumerate(p.images, 1):
        inv[y - 1] = x
    return Permutation(tuple(inv))


def cycle_decomposition(p: Permutation) -> Cycles:
    """Canonical cycles: each starts at its minimum, sorted by minimum."""
    images = p.images
    seen = [False] * len(images)
    cycles = []
    for start in range(1, len(images) + 1):
        if seen[start - 1]:
            continue
        cycle = []
        x = start
        while not seen[x - 1]:
            seen[x - 1] = True
            cycle.append(x)
            x = images[x - 1]
        cycles.append(tuple(cycle))
    return tuple(cycles)


def cycle_count(images: Sequence[int]) -> int:
    """Number of cycles of a 1-based image tuple (fixed points included)."""
    n = len(images)
    seen = [False] * (n + 1)
    count = 0
    for start in range(1, n + 1):
        if seen[start]:
            continue
        count += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = images[x - 1]
    return count


def enumerate_symmetric_group(
    k: int, shard: tuple[int, int] = (0, 1), cap: int = MAX_K
) -> Iterator[Permutation]:
    """
    Yield the elements of S_k in lexicographic order of image tuples.

    Shard ``(index, total)`` receives the permutations whose image of 1 is
    ``v`` with ``(v - 1) % total == index``.
    """
    for images in iter_image_tuples(k, shard, cap):
        yield Permutation(images)


def iter_image_tuples(
    k: int, shard: tuple[int, int] = (0, 1), cap: int = MAX_K
) -> Iterator[tuple[int, ...]]:
    """Raw image tuples behind :func:`enumerate_symmetric_group`."""
    index, total = shard
    if k < 1:
        raise InvalidInputError("k must be positive")
    if k > cap:
        raise ResourceLimitError(f"k={k} exceeds the enumeration cap {cap}")
    if total < 1 or not 0 <= index < total:
        raise InvalidInputError(f"bad shard {shard}")
    points = tuple(range(1, k + 1))
    for first in points:
        if (first - 1) % total != index:
            continue
        rest = points[: first - 1] + points[first:]
        for tail in itertools.permutations(rest):
            yield (first,) + tail


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, k: int) -> Permutation:
    """Parse cycle notation such as ``"(1 3)(2 4 5)"`` or ``"()"``."""
    stripped = re.sub(r"\s+", "", _CYCLE_RE.sub("", text))
    if stripped:
        raise InvalidInputError(f"unparseable cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        parts = body.replace(",", " ").split()
        try:
            cycles.append([int(x) for x in parts])
        except ValueError:
            raise InvalidInputError(f"non-integer point in {text!r}") from None
    return Permutation.from_cycles(k, cycles)
