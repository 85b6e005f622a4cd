"""
Sparse multivariate polynomials with exact rational coefficients.

Variables are indexed ``R2, R3, ...`` (free cumulants) or ``C2, C3, ...``.
A polynomial carries a single alphabet tag and mixing alphabets in one
operation is an error.

>>> p = parse_polynomial("R2 + 3*R4")
>>> str(p * p)
'R2^2 + 6*R2*R4 + 9*R4^2'
>>> str(c_polynomial(4))
'R2^2 + 3*R4'
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Union

from .errors import InvalidInputError

__all__ = [
    "Monomial",
    "RationalPolynomial",
    "add",
    "mul",
    "coefficient",
    "c_polynomial",
    "kerov_fixture",
    "gr_fixture",
    "expand_c_to_r",
    "parse_monomial",
    "parse_polynomial",
    "variable",
    "format_rational",
]

ALPHABETS = ("R", "C")
Number = Union[int, Fraction]


@dataclass(frozen=True, order=False)
class Monomial:
    """Product of powers ``X_i^e`` with strictly increasing ``i >= 2``."""

    powers: tuple[tuple[int, int], ...] = ()
    alphabet: str = "R"

    def __post_init__(self) -> None:
        powers = tuple((int(i), int(e)) for i, e in self.powers)
        object.__setattr__(self, "powers", powers)
        if self.alphabet not in ALPHABETS:
            raise InvalidInputError(f"unknown alphabet {self.alphabet!r}")
        indices = [i for i, _ in powers]
        if any(i < 2 for i in indices) or any(e < 1 for _, e in powers):
            raise InvalidInputError(f"bad powers {powers}")
        if indices != sorted(set(indices)):
            raise InvalidInputError(f"indices must strictly increase: {powers}")

    @classmethod
    def from_indices(cls, indices, alphabet: str = "R") -> Monomial:
        """``from_indices([2, 2, 4])`` is ``X2^2*X4``."""
        counts: dict[int, int] = {}
        for i in indices:
            counts[i] = counts.get(i, 0) + 1
        return cls(tuple(sorted(counts.items())), alphabet)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.powers)

    def __mul__(self, other: Monomial) -> Monomial:
        _check_alphabets(self.alphabet, other.alphabet)
        counts = dict(self.powers)
        for i, e in other.powers:
            counts[i] = counts.get(i, 0) + e
        return Monomial(tuple(sorted(counts.items())), self.alphabet)

    def sort_key(self) -> tuple[tuple[int, int], ...]:
        # descending lex on exponent vectors: R2^2 < R2 < R2*R4 < R3^2 < R4 < 1
        return tuple((i, -e) for i, e in self.powers) + ((math.inf, 0),)

    def __str__(self) -> str:
        if not self.powers:
            return "1"
        return "*".join(
            f"{self.alphabet}{i}" + (f"^{e}" if e > 1 else "") for i, e in self.powers
        )


ONE_R = Monomial((), "R")


def _check_alphabets(a: str, b: str) -> None:
    if a != b:
        raise InvalidInputError(f"alphabet mismatch: {a} vs {b}")


def format_rational(q: Number) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RationalPolynomial:
    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)
    alphabet: str = "R"

    def __post_init__(self) -> None:
        clean = {}
        for m, c in self.terms.items():
            _check_alphabets(m.alphabet, self.alphabet)
            c = Fraction(c)
            if c:
                clean[m] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, alphabet: str = "R") -> RationalPolynomial:
        return cls({}, alphabet)

    @classmethod
    def constant(cls, c: Number, alphabet: str = "R") -> RationalPolynomial:
        return cls({Monomial((), alphabet): Fraction(c)}, alphabet)

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda t: t[0].sort_key()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalPolynomial):
            if self.is_zero() and other.is_zero():
                return True
            return self.alphabet == other.alphabet and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == RationalPolynomial.constant(other, self.alphabet)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __add__(self, other: RationalPolynomial) -> RationalPolynomial:
        return add(self, other)

    def __sub__(self, other: RationalPolynomial) -> RationalPolynomial:
        return add(self, other.scale(-1))

    def __neg__(self) -> RationalPolynomial:
        return self.scale(-1)

    def __mul__(self, other: RationalPolynomial) -> RationalPolynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RationalPolynomial:
        result = RationalPolynomial.constant(1, self.alphabet)
        for _ in range(n):
            result = mul(result, self)
        return result

    def scale(self, c: Number) -> RationalPolynomial:
        return RationalPolynomial({m: v * c for m, v in self.terms.items()}, self.alphabet)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not m.powers:
                body = format_rational(mag)
            elif mag == 1:
                body = str(m)
            else:
                body = f"{format_rational(mag)}*{m}"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"RationalPolynomial({str(self)!r})"


def add(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    if not (a.is_zero() or b.is_zero()):
        _check_alphabets(a.alphabet, b.alphabet)
    alphabet = b.alphabet if a.is_zero() else a.alphabet
    terms = dict(a.terms)
    for m, c in b.terms.items():
        terms[m] = terms.get(m, 0) + c
    return RationalPolynomial(terms, alphabet)


def mul(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    _check_alphabets(a.alphabet, b.alphabet)
    terms: dict[Monomial, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            m = ma * mb
            terms[m] = terms.get(m, 0) + ca * cb
    return RationalPolynomial(terms, a.alphabet)


def coefficient(a: RationalPolynomial, m: Monomial) -> Fraction:
    if not a.is_zero():
        _check_alphabets(a.alphabet, m.alphabet)
    return a.terms.get(m, Fraction(0))


def variable(i: int, alphabet: str = "R") -> RationalPolynomial:
    return RationalPolynomial({Monomial(((i, 1),), alphabet): Fraction(1)}, alphabet)


def _partitions_min2(n: int, largest: int | None = None) -> Iterator[list[int]]:
    """Partitions of ``n`` into parts ``>= 2``, parts non-increasing."""
    if largest is None:
        largest = n
    if n == 0:
        yield []
        return
    for part in range(min(n, largest), 1, -1):
        for rest in _partitions_min2(n - part, part):
            yield [part] + rest


def c_polynomial(k: int) -> RationalPolynomial:
    """
    ``C_k`` in free cumulants: the sum over multiplicities ``j_i`` with
    ``sum i*j_i = k`` of ``(sum j_i)! * prod ((i-1) R_i)^{j_i} / j_i!``.
    """
    if k < 0:
        raise InvalidInputError("k must be non-negative")
    if k == 0:
        return RationalPolynomial.constant(1)
    terms = {}
    for parts in _partitions_min2(k):
        m = Monomial.from_indices(parts)
        c = Fraction(math.factorial(len(parts)))
        for i, j in m.powers:
            c *= Fraction((i - 1) ** j, math.factorial(j))
        terms[m] = c
    return RationalPolynomial(terms)


_VAR_RE = re.compile(r"^([RC])(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str) -> Monomial:
    """Parse ``"R2^2"``, ``"C2*C4"``, ``"R3*R2"``; ``"1"`` is the constant."""
    text = text.strip()
    if not text:
        raise InvalidInputError("empty monomial")
    counts: dict[int, int] = {}
    alphabet = None
    for factor in text.split("*"):
        match = _VAR_RE.match(factor.strip())
        if not match:
            raise InvalidInputError(f"bad factor {factor!r} in {text!r}")
        letter, index, power = match.group(1), int(match.group(2)), int(match.group(3) or 1)
        if index < 2 or power < 1:
            raise InvalidInputError(f"bad factor {factor!r} in {text!r}")
        if alphabet is not None and letter != alphabet:
            raise InvalidInputError(f"mixed alphabets in {text!r}")
        alphabet = letter
        counts[index] = counts.get(index, 0) + power
    return Monomial(tuple(sorted(counts.items())), alphabet)


_COEF_RE = re.compile(r"^(\d+)(?:/(\d+))?$")


def parse_polynomial(text: str, alphabet: str | None = None) -> RationalPolynomial:
    """Parse the printed form, e.g. ``"203/3*C2^2 + 180*C2"`` or ``"0"``."""
    body = text.strip()
    if not body.startswith(("+", "-")):
        body = "+ " + body
    tokens = re.split(r"\s*([+-])\s*", body)
    terms: dict[Monomial, Fraction] = {}
    found = alphabet
    # tokens: ['', sign, term, sign, term, ...]
    if tokens[0] != "" or len(tokens) % 2 == 0:
        raise InvalidInputError(f"unparseable polynomial {text!r}")
    for sign, body in zip(tokens[1::2], tokens[2::2]):
        if not body:
            raise InvalidInputError(f"unparseable polynomial {text!r}")
        head, _, tail = body.partition("*")
        coef_match = _COEF_RE.match(head)
        if coef_match:
            coef = Fraction(int(coef_match.group(1)), int(coef_match.group(2) or 1))
            mono = parse_monomial(tail) if tail else Monomial((), found or "R")
        else:
            coef = Fraction(1)
            mono = parse_monomial(body)
        if mono.powers:
            if found is not None and mono.alphabet != found:
                raise InvalidInputError(f"mixed alphabets in {text!r}")
            found = mono.alphabet
        if sign == "-":
            coef = -coef
        terms[mono] = terms.get(mono, 0) + coef
    found = found or "R"
    fixed = {Monomial(m.powers, found): c for m, c in terms.items()}
    return RationalPolynomial(fixed, found)


_KEROV = {
    1: "R2",
    2: "R3",
    3: "R4 + R2",
    4: "R5 + 5*R3",
    5: "R6 + 15*R4 + 5*R2^2 + 8*R2",
    6: "R7 + 35*R5 + 35*R3*R2 + 84*R3",
    7: "R8 + 180*R2 + 224*R2^2 + 14*R2^3 + 56*R3^2 + 469*R4 + 84*R2*R4 + 70*R6",
}

# K_k - R_{k+1} in the C alphabet
_GOULDEN_RATTAN = {
    1: "0",
    2: "0",
    3: "C2",
    4: "5/2*C3",
    5: "5*C4 + 8*C2",
    6: "35/4*C5 + 42*C3",
    7: "14*C6 + 469/3*C4 + 203/3*C2^2 + 180*C2",
}


def kerov_fixture(k: int) -> RationalPolynomial:
    """Published Kerov polynomial ``K_k`` for ``1 <= k <= 7``."""
    if k not in _KEROV:
        raise InvalidInputError(f"no Kerov fixture for k={k}")
    return parse_polynomial(_KEROV[k], "R")


def gr_fixture(k: int) -> RationalPolynomial:
    """Published Goulden-Rattan polynomial ``L_k = K_k - R_{k+1}``, ``1 <= k <= 7``."""
    if k not in _GOULDEN_RATTAN:
        raise InvalidInputError(f"no Goulden-Rattan fixture for k={k}")
    return parse_polynomial(_GOULDEN_RATTAN[k], "C")


def expand_c_to_r(p: RationalPolynomial) -> RationalPolynomial:
    """Substitute ``C_i -> c_polynomial(i)`` and expand."""
    if p.is_zero():
        return RationalPolynomial.zero("R")
    if p.alphabet != "C":
        raise InvalidInputError("expand_c_to_r expects a polynomial in C")
    result = RationalPolynomial.zero("R")
    for m, c in p.terms.items():
        term = RationalPolynomial.constant(c, "R")
        for i, e in m.powers:
            term = term * c_polynomial(i) ** e
        result = result + term
    return result
