"""Constructive converses: Rado witnesses and the Muirhead probe vectors."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate

from .core import RVector, decreasing_rearrangement, format_rational, to_rational
from .errors import InputError, InvariantError
from .hull import SeparationCertificate, certificate_problem
from .means import (MeanValue, Mode, Order, compare_values, exponent_vector,
                    symmetric_mean)
from .perms import PermGroup, full_symmetric_group


@dataclass(frozen=True)
class RadoWitness:
    M: int
    u: RVector
    margin: Fraction
    x: RVector
    lhs: MeanValue  # [x^b]_G
    rhs: MeanValue  # [x^a]_G
    transcript: tuple = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {"M": self.M, "u": self.u.to_json(), "margin": format_rational(self.margin),
                "x": self.x.to_json(), "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(),
                "mode": self.lhs.mode.value}


def smallest_base(margin: Fraction, group_order: int) -> int:
    """Smallest integer M >= 2 with M^margin > |G|, tested as M^p > |G|^q."""
    p, q = margin.numerator, margin.denominator
    if p <= 0:
        raise InputError("margin must be positive")
    target = group_order ** q
    M = 2
    while M ** p <= target:
        M += 1
    return M


def _integral(v) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def build_rado_witness(cert: SeparationCertificate, a, b, group: PermGroup) -> RadoWitness:
    """Positive x with [x^b]_G > [x^a]_G from a hyperplane separating b from K_G(a)."""
    a, b = exponent_vector(a), exponent_vector(b)
    problem = certificate_problem(cert, b, a, group)
    if problem:
        raise InputError(f"separation certificate does not verify: {problem}")
    transcript = [{"step": "certificate_verified", "orbit_checked": True}]
    L = math.lcm(*(x.denominator for x in cert.u))
    u, margin = cert.u.scale(L), cert.margin * L
    if L != 1:
        transcript.append({"step": "scaled_u", "factor": L})
    M = smallest_base(margin, group.order)
    transcript.append({"step": "chose_M", "M": M, "check": f"{M}^{format_rational(margin)} > {group.order}"})
    x = RVector(Fraction(M) ** int(ui) for ui in u)
    mode = Mode.EXACT if _integral(a) and _integral(b) else Mode.FLOAT
    lhs = symmetric_mean(x, b, group, mode)
    rhs = symmetric_mean(x, a, group, mode)
    order = compare_values(lhs, rhs)
    transcript.append({"step": "evaluated_means", "mode": mode.value,
                       "lhs": lhs.to_json(), "rhs": rhs.to_json(), "order": order.value})
    if order is not Order.GREATER:
        raise InvariantError(f"witness failed: [x^b]_G is not greater than [x^a]_G ({order.value})")
    return RadoWitness(M, u, margin, x, lhs, rhs, tuple(transcript))


def witness_problem(w: RadoWitness, a, b, group: PermGroup):
    """Re-check a witness by direct evaluation; None when it holds."""
    a, b = exponent_vector(a), exponent_vector(b)
    if len(w.x) != len(a) or any(v <= 0 for v in w.x):
        return "x must be a positive vector of matching length"
    mode = Mode.EXACT if _integral(a) and _integral(b) else Mode.FLOAT
    order = compare_values(symmetric_mean(w.x, b, group, mode), symmetric_mean(w.x, a, group, mode))
    if order is not Order.GREATER:
        return f"[x^b]_G vs [x^a]_G is {order.value}, expected greater"
    return None


def _power(w: Fraction, e: Fraction) -> MeanValue:
    if e.denominator == 1:
        return MeanValue(Mode.EXACT, w ** int(e))
    return MeanValue(Mode.FLOAT, float(w) ** float(e))


@dataclass(frozen=True)
class ConstantProbe:
    w: Fraction
    mean_a: MeanValue
    mean_b: MeanValue
    totals: Order  # Σb relative to Σa, as implied by the probe

    def to_json(self) -> dict:
        return {"w": format_rational(self.w), "mean_a": self.mean_a.to_json(),
                "mean_b": self.mean_b.to_json(), "totals": self.totals.value}


_FLIP = {Order.LESS: Order.GREATER, Order.GREATER: Order.LESS, Order.EQUAL: Order.EQUAL}


def probe_constant(a, b, w) -> ConstantProbe:
    """Compare [w^b] and [w^a] at a constant vector, where both equal w^{Σ}."""
    a, b = exponent_vector(a), exponent_vector(b)
    w = to_rational(w)
    if w <= 0 or w == 1:
        raise InputError("probe base must be positive and different from 1")
    mean_a, mean_b = _power(w, a.total()), _power(w, b.total())
    order = compare_values(mean_b, mean_a)
    return ConstantProbe(w, mean_a, mean_b, order if w > 1 else _FLIP[order])


@dataclass(frozen=True)
class StepProbe:
    k: int
    prefix_a: Fraction
    prefix_b: Fraction
    mean_a: MeanValue
    mean_b: MeanValue
    value_order: Order   # [w^b] vs [w^a] at the given w
    asymptotic: Order    # as w → ∞, decided by prefix_b vs prefix_a

    def to_json(self) -> dict:
        return {"k": self.k, "prefix_a": format_rational(self.prefix_a),
                "prefix_b": format_rational(self.prefix_b),
                "mean_a": self.mean_a.to_json(), "mean_b": self.mean_b.to_json(),
                "value_order": self.value_order.value, "asymptotic": self.asymptotic.value}


def probe_step_vectors(a, b, w) -> list[StepProbe]:
    """Evaluate both S_n means at (w,..,w,1,..,1) with k leading w's, k = 1..n-1."""
    a, b = exponent_vector(a), exponent_vector(b)
    if len(a) != len(b):
        raise InputError(f"length mismatch: {len(a)} vs {len(b)}")
    w = to_rational(w)
    if w <= 1:
        raise InputError("step probes need w > 1")
    n = len(a)
    ad, bd = decreasing_rearrangement(a), decreasing_rearrangement(b)
    mode = Mode.EXACT if _integral(a) and _integral(b) else Mode.FLOAT
    group = full_symmetric_group(n)
    out = []
    for k, pa, pb in zip(range(1, n), accumulate(ad), accumulate(bd)):
        wk = RVector([w] * k + [1] * (n - k))
        ma, mb = symmetric_mean(wk, ad, group, mode), symmetric_mean(wk, bd, group, mode)
        asym = Order.LESS if pb < pa else Order.GREATER if pb > pa else Order.EQUAL
        out.append(StepProbe(k, pa, pb, ma, mb, compare_values(mb, ma), asym))
    return out


def infer_majorization_from_probes(a, b, w) -> bool:
    """Conclusion of the probe argument: do the probes force b ⪯ a?

    Needs equal totals (constant probes at w and 1/w) and no step probe
    whose leading power favours b.
    """
    w = to_rational(w)
    if probe_constant(a, b, w).totals is not Order.EQUAL:
        return False
    if probe_constant(a, b, 1 / w).totals is not Order.EQUAL:
        return False
    return all(p.asymptotic is not Order.GREATER for p in probe_step_vectors(a, b, w))
