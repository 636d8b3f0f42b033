"""Monomials x^a and their G-symmetric means.

Exact mode needs integral exponents and returns a Fraction.  Float mode
accepts any nonnegative rational exponents and works in binary64 through
exp/log.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .core import RVector, format_rational, is_nonnegative, is_positive
from .errors import InputError
from .perms import PermGroup

REL_TOL = 1e-9
ABS_TOL = 1e-12


class Mode(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


@dataclass(frozen=True)
class MeanValue:
    mode: Mode
    value: Union[Fraction, float]

    def to_json(self):
        if self.mode is Mode.EXACT:
            return format_rational(self.value)
        return self.value


class Order(str, enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@dataclass(frozen=True)
class MeanComparison:
    order: Order
    lhs: MeanValue  # [x^b]_G
    rhs: MeanValue  # [x^a]_G

    def to_json(self) -> dict:
        return {"order": self.order.value, "lhs": self.lhs.to_json(),
                "rhs": self.rhs.to_json(), "mode": self.lhs.mode.value}


def exponent_vector(a: Sequence, exact: bool = False) -> RVector:
    a = RVector(a)
    if not is_nonnegative(a):
        raise InputError(f"exponents must be nonnegative: {a}")
    if exact and any(q.denominator != 1 for q in a):
        raise InputError(f"exact mode needs integral exponents, got {a}")
    return a


def _validate(x, a, mode) -> tuple[RVector, RVector, Mode]:
    mode = Mode(mode)
    x = RVector(x)
    a = exponent_vector(a, exact=mode is Mode.EXACT)
    if len(x) != len(a):
        raise InputError(f"length mismatch: x has {len(x)}, exponents {len(a)}")
    if not is_positive(x):
        raise InputError(f"x must be strictly positive: {x}")
    return x, a, mode


def monomial_eval(x, a, mode=Mode.EXACT) -> MeanValue:
    """x_1^{a_1} ... x_n^{a_n}."""
    x, a, mode = _validate(x, a, mode)
    if mode is Mode.EXACT:
        out = Fraction(1)
        for xi, ai in zip(x, a):
            out *= xi ** int(ai)
        return MeanValue(mode, out)
    return MeanValue(mode, math.exp(_log_monomial([math.log(v) for v in x], a)))


def _log_monomial(logs: Sequence[float], a: Sequence[Fraction]) -> float:
    return math.fsum(float(ai) * li for ai, li in zip(a, logs) if ai)


def symmetric_sum_exact(x: RVector, a: Sequence[int], group: PermGroup) -> Fraction:
    """Σ_{σ∈G} Π_i x_{σ(i)}^{a_i}, unnormalized, exact.

    Works over a common denominator: with x_i = X_i / D every term has the
    same denominator D^{Σa}, so the sum is a single big-integer computation.
    """
    D = math.lcm(*(q.denominator for q in x))
    X = [int(q * D) for q in x]
    exps = [int(e) for e in a]
    total = sum(exps)
    # cache[i][e] = X_i ** e for each distinct exponent e
    distinct = sorted(set(exps))
    cache = [{e: Xi ** e for e in distinct} for Xi in X]
    acc = 0
    active = [(i, e) for i, e in enumerate(exps) if e]
    for sigma in group:
        imgs = sigma.images
        term = 1
        for i, e in active:
            term *= cache[imgs[i] - 1][e]
        acc += term
    return Fraction(acc, D ** total)


def symmetric_mean(x, a, group: PermGroup, mode=Mode.EXACT) -> MeanValue:
    """[x^a]_G = (1/|G|) Σ_{σ∈G} x_{σ(1)}^{a_1} ... x_{σ(n)}^{a_n}."""
    x, a, mode = _validate(x, a, mode)
    if group.n != len(x):
        raise InputError(f"group degree {group.n} does not match vector length {len(x)}")
    if mode is Mode.EXACT:
        return MeanValue(mode, symmetric_sum_exact(x, a, group) / group.order)
    logs = [math.log(v) for v in x]
    # fsum: correctly rounded, so independent of group iteration order
    terms = [math.exp(math.fsum(float(ai) * logs[s - 1]
                                for ai, s in zip(a, sigma.images) if ai))
             for sigma in group]
    return MeanValue(mode, math.fsum(terms) / group.order)


def floats_equal(u: float, v: float, rel_tol: float = REL_TOL, abs_tol: float = ABS_TOL) -> bool:
    return math.isclose(u, v, rel_tol=rel_tol, abs_tol=abs_tol)


def compare_values(lhs: MeanValue, rhs: MeanValue) -> Order:
    if lhs.mode is Mode.EXACT and rhs.mode is Mode.EXACT:
        diff = lhs.value - rhs.value
    else:
        l, r = float(lhs.value), float(rhs.value)
        if floats_equal(l, r):
            return Order.EQUAL
        diff = l - r
    if diff < 0:
        return Order.LESS
    if diff > 0:
        return Order.GREATER
    return Order.EQUAL


def compare_means(x, a, b, group: PermGroup, mode=Mode.EXACT) -> MeanComparison:
    """Order of [x^b]_G relative to [x^a]_G."""
    if len(a) != len(b):
        raise InputError(f"exponent length mismatch: {len(a)} vs {len(b)}")
    rhs = symmetric_mean(x, a, group, mode)
    lhs = symmetric_mean(x, b, group, mode)
    return MeanComparison(compare_values(lhs, rhs), lhs, rhs)


@dataclass(frozen=True)
class AMGMCertificate:
    c: RVector
    all_zero: bool


def amgm_certificate(a, b) -> AMGMCertificate:
    """c = a - b for equal-total exponent vectors (Σc = 0)."""
    a, b = exponent_vector(a), exponent_vector(b)
    if len(a) != len(b):
        raise InputError(f"length mismatch: {len(a)} vs {len(b)}")
    if a.total() != b.total():
        raise InputError(f"totals differ: {a.total()} vs {b.total()}")
    c = a - b
    return AMGMCertificate(c, all(v == 0 for v in c))


def amgm_excess(x, c: Sequence[Fraction], group: PermGroup) -> float:
    """Σ_{σ∈G} (Π_i x_{σ(i)}^{c_i} - 1), float; positive for nonconstant x when c ≠ 0 and G = S_n."""
    logs = [math.log(v) for v in RVector(x)]
    return math.fsum(
        math.exp(math.fsum(float(ci) * logs[s - 1] for ci, s in zip(c, sigma.images))) - 1.0
        for sigma in group)

