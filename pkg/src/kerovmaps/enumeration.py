"""
Brute-force counts of long-cycle factorizations and of expander families.

Two independent routes are kept on purpose:

* ``count_linear`` / ``count_square`` count permutation pairs (and triples
  with a size assignment) exactly as in the combinatorial description of
  the linear and square Kerov coefficients;
* ``enumerate_Y`` / ``enumerate_X`` build actual maps and filter them with
  :func:`kerovmaps.rmap.is_expander`.

Every enumeration iterates one permutation over ``S_k`` and derives the
other from the long cycle, so the work is ``k!`` rather than ``(k!)^2``.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterator

from .errors import InvalidInputError, ResourceLimitError
from .perm import MAX_K, Permutation, cycle_count, cycle_decomposition, iter_image_tuples
from .rmap import RootedBipartiteMap, from_factorization, is_expander

__all__ = [
    "FamilySpec",
    "CountResult",
    "CountCache",
    "run_count",
    "count_linear",
    "count_square",
    "enumerate_Y",
    "enumerate_X",
    "gr_linear_coefficient",
    "gr_square_coefficient",
    "ConjectureRow",
    "conjecture_table",
    "kerov_linear_square_part",
]

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FAMILIES = ("linear", "square", "X", "Y")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    k: int
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        expected = {"linear": 1, "Y": 1, "square": 2, "X": 2}.get(self.family)
        if expected is None:
            raise InvalidInputError(f"unknown family {self.family!r}")
        if len(self.params) != expected:
            raise InvalidInputError(f"{self.family} takes {expected} parameter(s)")
        if self.k < 1 or any(p < 2 for p in self.params):
            raise InvalidInputError(f"need k >= 1 and parameters >= 2: {self}")

    @property
    def filename(self) -> str:
        return f"{self.family}_k{self.k}_{'-'.join(map(str, self.params))}.json"


@dataclass(frozen=True)
class CountResult:
    spec: FamilySpec
    count: int
    elapsed: float
    shards: int
    cached: bool = False


class CountCache:
    """One JSON file per family/k/params; absent or stale files are ignored."""

    def __init__(self, directory: str | os.PathLike | None = None):
        if directory is None:
            directory = default_cache_dir()
        self.directory = Path(directory)

    def _path(self, spec: FamilySpec) -> Path:
        return self.directory / spec.filename

    def get(self, spec: FamilySpec) -> int | None:
        try:
            data = json.loads(self._path(spec).read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return None
        if data.get("schema_version") != SCHEMA_VERSION:
            return None
        if [data.get("family"), data.get("k"), data.get("params")] != [
            spec.family, spec.k, list(spec.params)
        ]:
            return None
        return int(data["count"])

    def put(self, spec: FamilySpec, count: int) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "family": spec.family,
            "k": spec.k,
            "params": list(spec.params),
            "count": count,
        }
        tmp = self._path(spec).with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True) + "\n", encoding="utf-8")
        tmp.replace(self._path(spec))


def default_cache_dir() -> Path:
    env = os.environ.get("KEROV_CACHE_DIR")
    if env:
        return Path(env)
    import platformdirs

    return Path(platformdirs.user_cache_dir("kerovmaps"))


# --- shard kernels (module level so worker processes can import them) ---


def _long_cycle_tail(images: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Images of ``sigma^{-1} o (1 2 ... k)`` for ``sigma`` given by ``images``."""
    inv = [0] * (k + 1)
    for x, y in enumerate(images, 1):
        inv[y] = x
    return tuple(inv[x + 1] for x in range(1, k)) + (inv[1],)


def _count_linear_shard(k: int, l: int, shard: tuple[int, int], cap: int) -> int:
    count = 0
    for s1 in iter_image_tuples(k, shard, cap):
        if cycle_count(s1) != l - 1:
            continue
        if cycle_count(_long_cycle_tail(s1, k)) == 1:
            count += 1
    return count


def _supports(images: tuple[int, ...]) -> list[frozenset[int]]:
    return [frozenset(c) for c in cycle_decomposition(Permutation(images))]


def _count_square_shard(k: int, l1: int, l2: int, shard: tuple[int, int], cap: int) -> int:
    want = l1 + l2 - 2
    assignments = [(l1, l2)] if l1 == l2 else [(l1, l2), (l2, l1)]
    count = 0
    for s1 in iter_image_tuples(k, shard, cap):
        if cycle_count(s1) != 2:
            continue
        s2 = _long_cycle_tail(s1, k)
        if cycle_count(s2) != want:
            continue
        c_a, c_b = _supports(s1)
        s2_cycles = _supports(s2)
        meet_a = sum(1 for c in s2_cycles if c & c_a)
        meet_b = sum(1 for c in s2_cycles if c & c_b)
        for qa, qb in assignments:
            if meet_a >= qa and meet_b >= qb:
                count += 1
    return count


def _maps_shard(
    k: int, n_white: int, n_black: int, shard: tuple[int, int], cap: int
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Factorizations ``sigma_white o sigma_black = (1..k)`` with given cycle counts."""
    out = []
    for sw in iter_image_tuples(k, shard, cap):
        if cycle_count(sw) != n_white:
            continue
        sb = _long_cycle_tail(sw, k)
        if cycle_count(sb) == n_black:
            out.append((sw, sb))
    return out


def _run_shards(fn: Callable, args: tuple, shards: int, workers: int) -> list:
    layouts = [(i, shards) for i in range(shards)]
    if workers <= 1 or shards <= 1:
        return [fn(*args[:-1], layout, args[-1]) for layout in layouts]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *args[:-1], layout, args[-1]) for layout in layouts]
        return [f.result() for f in futures]


def _check_cap(k: int, cap: int) -> None:
    if k > cap:
        raise ResourceLimitError(f"k={k} exceeds the enumeration cap {cap}")


def _factorizations(
    k: int, n_white: int, n_black: int, workers: int, shards: int | None, cap: int
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    _check_cap(k, cap)
    shards = shards or max(1, workers)
    parts = _run_shards(_maps_shard, (k, n_white, n_black, cap), shards, workers)
    pairs = [p for part in parts for p in part]
    if shards > 1:
        pairs.sort()
    return pairs


def enumerate_Y(
    k: int, u: int, *, workers: int = 1, shards: int | None = None, cap: int = MAX_K
) -> Iterator[RootedBipartiteMap]:
    """Expanders with ``k`` edges, ``u - 1`` white vertices and one black vertex."""
    FamilySpec("Y", k, (u,))
    for sw, sb in _factorizations(k, u - 1, 1, workers, shards, cap):
        m = from_factorization(Permutation(sw), Permutation(sb), (u - 1,))
        if is_expander(m):
            yield m


def enumerate_X(
    k: int, i: int, j: int, *, workers: int = 1, shards: int | None = None, cap: int = MAX_K
) -> Iterator[RootedBipartiteMap]:
    """
    Expanders with two black vertices of weights ``i - 1`` and ``j - 1``.

    For ``i != j`` the two ways of attaching the weights are distinct
    elements and both are yielded when they pass the expander test.
    """
    FamilySpec("X", k, (i, j))
    assignments = [(i - 1, j - 1)] if i == j else [(i - 1, j - 1), (j - 1, i - 1)]
    for sw, sb in _factorizations(k, i + j - 2, 2, workers, shards, cap):
        base = from_factorization(Permutation(sw), Permutation(sb), (1, 1))
        for weights in assignments:
            m = base.with_weights(weights)
            if is_expander(m):
                yield m


def run_count(
    spec: FamilySpec,
    *,
    workers: int = 1,
    shards: int | None = None,
    cache: CountCache | None = None,
    cap: int = MAX_K,
) -> CountResult:
    _check_cap(spec.k, cap)
    shards = shards or max(1, workers)
    if cache is not None:
        hit = cache.get(spec)
        if hit is not None:
            return CountResult(spec, hit, 0.0, shards, cached=True)
    start = time.perf_counter()
    log.info("enumerating %s k=%d params=%s over %d shard(s)", spec.family, spec.k, spec.params, shards)
    if spec.family == "linear":
        (l,) = spec.params
        count = sum(_run_shards(_count_linear_shard, (spec.k, l, cap), shards, workers))
    elif spec.family == "square":
        l1, l2 = spec.params
        count = sum(_run_shards(_count_square_shard, (spec.k, l1, l2, cap), shards, workers))
    elif spec.family == "Y":
        count = sum(1 for _ in enumerate_Y(spec.k, *spec.params, workers=workers, shards=shards, cap=cap))
    else:
        count = sum(1 for _ in enumerate_X(spec.k, *spec.params, workers=workers, shards=shards, cap=cap))
    elapsed = time.perf_counter() - start
    log.info("%s k=%d params=%s -> %d (%.2fs)", spec.family, spec.k, spec.params, count, elapsed)
    if cache is not None:
        cache.put(spec, count)
    return CountResult(spec, count, elapsed, shards)


def count_linear(k: int, l: int, **kwargs) -> int:
    """``[R_l] K_k``: pairs with ``s1 o s2 = (1..k)``, ``s2`` a single cycle, ``s1`` with ``l - 1`` cycles."""
    return run_count(FamilySpec("linear", k, (l,)), **kwargs).count


def count_square(k: int, l1: int, l2: int, **kwargs) -> int:
    """
    ``[R_l1 R_l2] K_k``: triples ``(s1, s2, q)`` with ``s1 o s2 = (1..k)``,
    ``s1`` of two cycles, ``s2`` of ``l1 + l2 - 2`` cycles and ``q`` giving
    ``l1, l2`` to the cycles of ``s1`` so that each cycle ``c`` meets at
    least ``q(c)`` cycles of ``s2``.
    """
    return run_count(FamilySpec("square", k, (l1, l2)), **kwargs).count


def _leading(k: int, l: int) -> int:
    """Contribution of the leading ``R_{k+1}`` of ``K_k``, which ``L_k`` omits."""
    return 1 if l == k + 1 else 0


def _reduced_linear(k: int, l: int, **kwargs) -> int:
    """``[R_l](K_k - R_{k+1})``."""
    return count_linear(k, l, **kwargs) - _leading(k, l)


def gr_linear_coefficient(k: int, j: int, **kwargs) -> Fraction:
    """``[C_j] L_k = [R_j](K_k - R_{k+1}) / (j - 1)``."""
    if j < 2:
        raise InvalidInputError("index must be >= 2")
    return Fraction(_reduced_linear(k, j, **kwargs), j - 1)


def gr_square_coefficient(k: int, i: int, j: int, **kwargs) -> Fraction:
    """
    Square Goulden-Rattan coefficient from two Kerov coefficients.

    Linear counts are taken in ``K_k - R_{k+1}``; otherwise ``i + j = k + 1``
    would pick up the leading term, e.g. ``[C_3^2] L_5`` would come out as
    ``-1/5`` instead of 0.
    """
    if i < 2 or j < 2:
        raise InvalidInputError("indices must be >= 2")
    if i == j:
        return Fraction(count_square(k, j, j, **kwargs), (j - 1) ** 2) - Fraction(
            _reduced_linear(k, 2 * j, **kwargs), 2 * j - 1
        )
    return Fraction(count_square(k, i, j, **kwargs), (i - 1) * (j - 1)) - Fraction(
        2 * _reduced_linear(k, i + j, **kwargs), i + j - 1
    )


@dataclass(frozen=True)
class ConjectureRow:
    k: int
    i: int
    j: int
    x_count: int
    y_count: int
    lhs: int
    rhs: int
    literal_rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs

    @property
    def literal_holds(self) -> bool:
        """Verdict when the leading star map is left inside ``Y_k(i+j)``."""
        return self.lhs >= self.literal_rhs

    @property
    def nonzero(self) -> bool:
        return bool(self.x_count or self.y_count)

    def to_json(self) -> dict:
        return {
            "k": self.k, "i": self.i, "j": self.j,
            "x_count": self.x_count, "y_count": self.y_count,
            "lhs": self.lhs, "rhs": self.rhs, "literal_rhs": self.literal_rhs,
            "pass": self.holds, "literal_pass": self.literal_holds,
        }


def conjecture_table(k: int, i: int, j: int, *, by_maps: bool = False, **kwargs) -> ConjectureRow:
    """
    Both sides of the square-coefficient positivity inequality:
    ``(2j-1)|X_k(j,j)| >= (j-1)^2 |Y_k(2j)|`` or
    ``(i+j-1)|X_k(i,j)| >= 2(i-1)(j-1)|Y_k(i+j)|``.

    ``by_maps`` counts the families through map enumeration instead of the
    permutation counts. When ``i + j = k + 1`` the single star map in
    ``Y_k(i+j)`` is the leading ``R_{k+1}`` term, absent from ``L_k``; ``rhs``
    drops it and ``literal_rhs`` keeps it.
    """
    if by_maps:
        x = run_count(FamilySpec("X", k, (i, j)), **kwargs).count
        y = run_count(FamilySpec("Y", k, (i + j,)), **kwargs).count
    else:
        x = count_square(k, i, j, **kwargs)
        y = count_linear(k, i + j, **kwargs)
    if i == j:
        lhs, scale = (2 * j - 1) * x, (j - 1) ** 2
    else:
        lhs, scale = (i + j - 1) * x, 2 * (i - 1) * (j - 1)
    rhs = scale * (y - _leading(k, i + j))
    return ConjectureRow(k, i, j, x, y, lhs, rhs, scale * y)


def kerov_linear_square_part(k: int, **kwargs) -> dict[tuple[int, ...], int]:
    """Every linear and square coefficient of ``K_k`` keyed by sorted index tuple."""
    out: dict[tuple[int, ...], int] = {}
    for l in range(2, k + 2):
        out[(l,)] = count_linear(k, l, **kwargs)
    for l1 in range(2, k + 2):
        for l2 in range(l1, k + 2):
            if l1 + l2 - 2 <= k:
                out[(l1, l2)] = count_square(k, l1, l2, **kwargs)
    return out

