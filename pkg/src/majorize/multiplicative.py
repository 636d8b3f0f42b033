"""Prefix-product dominance of positive decreasing sequences implies sum dominance.

The conclusion (a strict sum inequality) is certified by exact summation.
The logarithmic majorization behind it is only available in floating point
and is reported as a diagnostic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from operator import mul
from typing import Optional

from .core import RVector, format_rational
from .errors import InputError, InvariantError

LOG_TOL = 1e-9


@dataclass(frozen=True)
class MultiplicativePair:
    u: RVector
    v: RVector

    def __post_init__(self):
        u, v = RVector(self.u), RVector(self.v)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        _check_sequence(u, "u")
        _check_sequence(v, "v")
        if len(u) != len(v):
            raise InputError(f"length mismatch: {len(u)} vs {len(v)}")

    @property
    def diverging_index(self) -> Optional[int]:
        """Smallest 1-based i with u_i != v_i, or None when u == v."""
        return next((i for i, (p, q) in enumerate(zip(self.u, self.v), start=1) if p != q), None)


def _check_sequence(s: RVector, name: str) -> None:
    if any(x <= 0 for x in s):
        raise InputError(f"{name} must be strictly positive")
    if any(s[i] < s[i + 1] for i in range(len(s) - 1)):
        raise InputError(f"{name} must be non-increasing")


@dataclass(frozen=True)
class PrefixCheck:
    ok: bool
    failing_j: Optional[int] = None


def check_prefix_products(u, v) -> PrefixCheck:
    """Π_{i<=j} v_i <= Π_{i<=j} u_i for every j."""
    pair = MultiplicativePair(u, v)
    for j, (pu, pv) in enumerate(zip(accumulate(pair.u, mul), accumulate(pair.v, mul)), start=1):
        if pv > pu:
            return PrefixCheck(False, j)
    return PrefixCheck(True)


@dataclass(frozen=True)
class Augmentation:
    u_next: Fraction
    v_next: Fraction
    lambda_scale: Fraction

    def to_json(self) -> dict:
        return {"u_next": format_rational(self.u_next), "v_next": format_rational(self.v_next),
                "lambda": format_rational(self.lambda_scale)}


def _require_hypothesis(pair: MultiplicativePair) -> None:
    check = check_prefix_products(pair.u, pair.v)
    if not check.ok:
        raise InputError(f"prefix-product hypothesis fails at j = {check.failing_j}")


def augment(pair: MultiplicativePair) -> Augmentation:
    """Append one term to each sequence so that the full products agree."""
    _require_hypothesis(pair)
    u, v = pair.u, pair.v
    floor = min(u[-1], v[-1])
    v_next = floor
    u_next = floor * math.prod(v) / math.prod(u)
    if not (0 < u_next <= v_next):
        raise InvariantError("augmented terms out of order")
    if math.prod(u) * u_next != math.prod(v) * v_next:
        raise InvariantError("augmented products differ")
    smallest = min(min(u), min(v), u_next, v_next)
    lam = Fraction(1)
    while lam * smallest <= 1:
        lam *= 2
    return Augmentation(u_next, v_next, lam)


@dataclass(frozen=True)
class SumDominance:
    sum_u: Fraction
    sum_v: Fraction
    strict: bool
    augmentation: Augmentation
    log_a: tuple  # log(λu_i), i = 1..n+1
    log_b: tuple  # log(λv_i)
    log_majorized: bool

    def to_json(self) -> dict:
        return {"sum_u": format_rational(self.sum_u), "sum_v": format_rational(self.sum_v),
                "strict": self.strict, "augmentation": self.augmentation.to_json(),
                "log_a": list(self.log_a), "log_b": list(self.log_b),
                "log_majorized": self.log_majorized}


def _log_majorized(a: list, b: list, tol: float = LOG_TOL) -> bool:
    pa, pb = list(accumulate(sorted(a, reverse=True))), list(accumulate(sorted(b, reverse=True)))
    if not math.isclose(pa[-1], pb[-1], rel_tol=tol, abs_tol=tol):
        return False
    return all(y <= x + tol * max(1.0, abs(x)) for x, y in zip(pa, pb))


def sum_dominance(pair: MultiplicativePair) -> SumDominance:
    """Certify Σv < Σu exactly; attach the log-vectors as a float cross-check."""
    if pair.diverging_index is None:
        raise InputError("u == v: no strict conclusion")
    aug = augment(pair)
    sum_u, sum_v = pair.u.total(), pair.v.total()
    lam = aug.lambda_scale
    log_a = tuple(math.log(lam * x) for x in (*pair.u, aug.u_next))
    log_b = tuple(math.log(lam * x) for x in (*pair.v, aug.v_next))
    strict = sum_v < sum_u
    if not strict:
        raise InvariantError(f"sum of v ({sum_v}) is not below sum of u ({sum_u})")
    return SumDominance(sum_u, sum_v, strict, aug, log_a, log_b,
                        _log_majorized(list(log_a), list(log_b)))

