"""Membership in K_G(a), the convex hull of the orbit {γa : γ ∈ G}."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import RVector, format_rational, is_nonnegative, majorizes
from .errors import InputError, InvariantError
from .perms import PermGroup, Permutation, act_on_vector, parse_cycles
from .simplex import phase_one


@dataclass(frozen=True)
class MembershipCertificate:
    weights: dict  # Permutation -> Fraction, positive weights only

    def to_json(self) -> dict:
        return {g.cycle_string(): format_rational(t)
                for g, t in sorted(self.weights.items())}

    @classmethod
    def from_json(cls, d: dict, n: int) -> "MembershipCertificate":
        return cls({parse_cycles(k, n): Fraction(v) for k, v in d.items()})


@dataclass(frozen=True)
class SeparationCertificate:
    u: RVector
    c: Fraction
    margin: Fraction

    def to_json(self) -> dict:
        return {"u": self.u.to_json(), "c": format_rational(self.c),
                "margin": format_rational(self.margin)}

    @classmethod
    def from_json(cls, d: dict) -> "SeparationCertificate":
        return cls(RVector(d["u"]), Fraction(d["c"]), Fraction(d["margin"]))


Certificate = Union[MembershipCertificate, SeparationCertificate]


def orbit_map(a, group: PermGroup) -> dict:
    """Distinct orbit points of ``a``, each keyed to its smallest group element."""
    a = RVector(a)
    if group.n != len(a):
        raise InputError(f"group degree {group.n} does not match vector length {len(a)}")
    points: dict[RVector, Permutation] = {}
    for g in group:  # elements are sorted, so the first hit is the smallest
        points.setdefault(act_on_vector(g, a), g)
    return points


def orbit(a, group: PermGroup) -> list[RVector]:
    return list(orbit_map(a, group))


def _check_inputs(b, a, group, allow_negative):
    a, b = RVector(a), RVector(b)
    if len(a) != len(b):
        raise InputError(f"length mismatch: {len(a)} vs {len(b)}")
    if group.n != len(a):
        raise InputError(f"group degree {group.n} does not match vector length {len(a)}")
    if not allow_negative and not (is_nonnegative(a) and is_nonnegative(b)):
        raise InputError("a and b must be nonnegative (pass allow_negative to relax)")
    return a, b


def membership(b, a, group: PermGroup, allow_negative: bool = False) -> Certificate:
    """Exact LP decision of b ∈ K_G(a), with a checkable certificate either way."""
    a, b = _check_inputs(b, a, group, allow_negative)
    points = orbit_map(a, group)
    reps = list(points.items())
    n = len(a)
    # rows: Σ t = 1, then Σ t_p p_i = b_i
    A = [[Fraction(1)] * len(reps)] + [[p[i] for p, _ in reps] for i in range(n)]
    rhs = [Fraction(1)] + list(b)
    res = phase_one(A, rhs)
    if res.feasible:
        weights = {g: t for (p, g), t in zip(reps, res.solution) if t}
        cert = MembershipCertificate(weights)
    else:
        y = res.farkas
        cert = normalize_separation(RVector(y[1:]), list(points), b, a.total() == b.total())
    problem = certificate_problem(cert, b, a, group)
    if problem:
        raise InvariantError(f"membership certificate failed re-verification: {problem}")
    return cert


def normalize_separation(u: RVector, orbit_points, b: RVector,
                         equal_totals: bool = False) -> SeparationCertificate:
    """Scale u so u, c, margin are coprime integers; c = max over the orbit of ⟨u, p⟩.

    With equal totals every point involved lies on one hyperplane Σx = s, so
    u is first projected onto the sum-zero subspace without changing the
    separation.
    """
    if equal_totals:
        shift = u.total() / len(u)
        u = RVector(x - shift for x in u)
    if all(x == 0 for x in u):
        raise InvariantError("separating functional is zero")
    L = math.lcm(*(x.denominator for x in u))
    u = u.scale(L)
    c = max(u.dot(p) for p in orbit_points)
    margin = u.dot(b) - c
    L = math.lcm(c.denominator, margin.denominator)
    u, c, margin = u.scale(L), c * L, margin * L
    g = math.gcd(*(int(x) for x in u), int(c), int(margin))
    return SeparationCertificate(u.scale(Fraction(1, g)), c / g, margin / g)


def certificate_problem(cert: Certificate, b, a, group: PermGroup):
    """None if ``cert`` proves its claim about b and K_G(a), else a description."""
    a, b = RVector(a), RVector(b)
    if isinstance(cert, MembershipCertificate):
        if not cert.weights:
            return "no weights"
        if any(g not in group for g in cert.weights):
            return "weight on a permutation outside G"
        if any(t < 0 for t in cert.weights.values()):
            return "negative weight"
        if sum(cert.weights.values()) != 1:
            return "weights do not sum to 1"
        combo = [Fraction(0)] * len(a)
        for g, t in cert.weights.items():
            for i, v in enumerate(act_on_vector(g, a)):
                combo[i] += t * v
        if RVector(combo) != b:
            return "Σ t_γ γa differs from b"
        return None
    if len(cert.u) != len(a):
        return "functional has wrong length"
    if all(x == 0 for x in cert.u):
        return "zero functional"
    if cert.margin <= 0:
        return "margin is not positive"
    for p in orbit(a, group):
        if cert.u.dot(p) > cert.c:
            return f"orbit point {p.to_json()} violates ⟨u, p⟩ <= c"
    if cert.u.dot(b) < cert.c + cert.margin:
        return "⟨u, b⟩ < c + margin"
    return None


def is_member(cert: Certificate) -> bool:
    return isinstance(cert, MembershipCertificate)


def membership_via_majorization(b, a) -> bool:
    """b ∈ K_{S_n}(a) via majorization; only meaningful for the full symmetric group."""
    return majorizes(RVector(a), RVector(b)).holds
