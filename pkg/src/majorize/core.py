"""Exact rational vectors and the majorization predicate."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Optional, Union

from .errors import InputError

RationalLike = Union[int, Fraction, str]


def to_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction, refusing binary floats."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed rational {value!r}") from exc
    raise InputError(f"not a rational: {value!r} (floats are not accepted)")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RVector(tuple):
    """Immutable sequence of Fractions, length >= 1."""

    def __new__(cls, coords: Iterable[RationalLike] = ()):
        items = tuple(to_rational(c) for c in coords)
        if not items:
            raise InputError("vectors must have at least one coordinate")
        return super().__new__(cls, items)

    @property
    def n(self) -> int:
        return len(self)

    def total(self) -> Fraction:
        return sum(self, Fraction(0))

    def __add__(self, other):
        _check_lengths(self, other)
        return RVector(x + y for x, y in zip(self, other))

    def __sub__(self, other):
        _check_lengths(self, other)
        return RVector(x - y for x, y in zip(self, other))

    def scale(self, k: RationalLike) -> "RVector":
        k = to_rational(k)
        return RVector(k * x for x in self)

    def dot(self, other) -> Fraction:
        _check_lengths(self, other)
        return sum((x * y for x, y in zip(self, other)), Fraction(0))

    def to_json(self) -> list:
        return [format_rational(x) for x in self]

    def __repr__(self):
        return f"RVector({', '.join(format_rational(x) for x in self)})"


def _check_lengths(u, v) -> None:
    if len(u) != len(v):
        raise InputError(f"length mismatch: {len(u)} vs {len(v)}")


def decreasing_order(v: RVector) -> list[int]:
    """Indices of ``v`` sorted by non-increasing value; ties keep index order."""
    return sorted(range(len(v)), key=lambda i: -v[i])


def decreasing_rearrangement(v: RVector) -> RVector:
    return RVector(v[i] for i in decreasing_order(v))


def prefix_sums(v: RVector) -> list[Fraction]:
    return list(accumulate(v))


class Relation(str, enum.Enum):
    EQUAL = "equal"
    STRICT_MAJOR = "strict_major"
    # kept for wire compatibility; majorizes() never produces it
    WEAK_ONLY_EQUAL_CASE = "weak_only_equal_case"
    INCOMPARABLE = "incomparable"
    SUM_MISMATCH = "sum_mismatch"


@dataclass(frozen=True)
class MajorizationVerdict:
    relation: Relation
    failing_prefix: Optional[int] = None  # 1-based k

    @property
    def holds(self) -> bool:
        """True when b is (weakly) majorized by a."""
        return self.relation in (Relation.EQUAL, Relation.STRICT_MAJOR)

    @property
    def strict(self) -> bool:
        return self.relation is Relation.STRICT_MAJOR

    def to_json(self) -> dict:
        out = {"relation": self.relation.value}
        if self.failing_prefix is not None:
            out["failing_prefix"] = self.failing_prefix
        return out


def majorizes(a: RVector, b: RVector) -> MajorizationVerdict:
    """Decide whether ``a`` majorizes ``b`` (b ⪯ a), exactly."""
    a, b = RVector(a), RVector(b)
    _check_lengths(a, b)
    ad, bd = decreasing_rearrangement(a), decreasing_rearrangement(b)
    if ad == bd:
        return MajorizationVerdict(Relation.EQUAL)
    if a.total() != b.total():
        return MajorizationVerdict(Relation.SUM_MISMATCH)
    for k, (pa, pb) in enumerate(zip(prefix_sums(ad), prefix_sums(bd)), start=1):
        if pb > pa:
            return MajorizationVerdict(Relation.INCOMPARABLE, failing_prefix=k)
    return MajorizationVerdict(Relation.STRICT_MAJOR)


def hamming_distance(u: RVector, v: RVector) -> int:
    _check_lengths(u, v)
    return sum(1 for x, y in zip(u, v) if x != y)


def is_constant(v: RVector) -> bool:
    return all(x == v[0] for x in v)


def is_nonnegative(v: RVector) -> bool:
    return all(x >= 0 for x in v)


def is_positive(v: RVector) -> bool:
    return all(x > 0 for x in v)
