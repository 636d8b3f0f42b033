"""Strict majorization chains, T-transforms, HLP matrices and Birkhoff decomposition.

Everything is exact over Fractions.  Coordinate indices in public data
(``TransferStep.j``/``k``) are 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import (RVector, decreasing_order, decreasing_rearrangement,
                   format_rational, hamming_distance, is_nonnegative, majorizes)
from .errors import InputError, InvariantError
from .perms import Permutation

Matrix = tuple  # tuple of row tuples of Fractions

ZERO, ONE = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class TransferStep:
    j: int
    k: int
    rho: Fraction
    Delta: Fraction
    delta: Fraction
    lam: Fraction

    @property
    def amount(self) -> Fraction:
        return self.Delta - self.delta

    def to_json(self) -> dict:
        return {"j": self.j, "k": self.k, "rho": format_rational(self.rho),
                "delta": format_rational(self.delta), "Delta": format_rational(self.Delta),
                "lambda": format_rational(self.lam)}

    @classmethod
    def from_json(cls, d: dict) -> "TransferStep":
        return cls(int(d["j"]), int(d["k"]), Fraction(d["rho"]), Fraction(d["Delta"]),
                   Fraction(d["delta"]), Fraction(d["lambda"]))


@dataclass(frozen=True)
class MajorizationChain:
    vectors: tuple[RVector, ...]
    steps: tuple[TransferStep, ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {"vectors": [v.to_json() for v in self.vectors],
                "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, d: dict) -> "MajorizationChain":
        return cls(tuple(RVector(v) for v in d["vectors"]),
                   tuple(TransferStep.from_json(s) for s in d["steps"]))


def build_chain(a, b) -> MajorizationChain:
    """Chain a↓ = c_0 ≻ c_1 ≻ ... ≻ c_r = b↓ of single transfers.

    Each step takes the first coordinate k where c falls short of b↓ and
    the last coordinate j < k where c exceeds b↓; coordinates strictly
    between agree with b↓.  Moving min(c_j - b_j, b_k - c_k) from j to k
    keeps c decreasing, so no re-sorting is needed and exactly two
    coordinates change.  Every step settles c_j or c_k, giving r <= n - 1.
    """
    a, b = RVector(a), RVector(b)
    if not (is_nonnegative(a) and is_nonnegative(b)):
        raise InputError("chain endpoints must be nonnegative")
    verdict = majorizes(a, b)
    if not verdict.strict:
        raise InputError(f"b is not strictly majorized by a ({verdict.relation.value})")
    target = decreasing_rearrangement(b)
    c = list(decreasing_rearrangement(a))
    vectors, steps = [RVector(c)], []
    n = len(c)
    while c != list(target):
        k = next(i for i in range(n) if c[i] < target[i])
        j = max(i for i in range(k) if c[i] > target[i])
        move = min(c[j] - target[j], target[k] - c[k])
        rho = (c[j] + c[k]) / 2
        Delta = (c[j] - c[k]) / 2
        delta = Delta - move
        steps.append(TransferStep(j + 1, k + 1, rho, Delta, delta, (Delta + delta) / (2 * Delta)))
        c[j] -= move
        c[k] += move
        vectors.append(RVector(c))
    chain = MajorizationChain(tuple(vectors), tuple(steps))
    problems = chain_problems(chain, a, b)
    if problems:
        raise InvariantError("; ".join(problems))
    return chain


def chain_problems(chain: MajorizationChain, a, b) -> list[str]:
    """Everything wrong with ``chain`` as a strict chain from a to b (empty if valid)."""
    a, b = RVector(a), RVector(b)
    out = []
    vs = chain.vectors
    n = len(a)
    if not vs or vs[0] != decreasing_rearrangement(a):
        out.append("chain does not start at a↓")
    if not vs or vs[-1] != decreasing_rearrangement(b):
        out.append("chain does not end at b↓")
    if len(chain.steps) != len(vs) - 1:
        out.append("step count does not match vector count")
    if len(chain.steps) > max(n - 1, 0):
        out.append(f"chain length {len(chain.steps)} exceeds n-1 = {n - 1}")
    for i in range(1, len(vs)):
        prev, cur = vs[i - 1], vs[i]
        if not majorizes(prev, cur).strict:
            out.append(f"c_{i} is not strictly majorized by c_{i - 1}")
        if hamming_distance(prev, cur) != 2:
            out.append(f"d_H(c_{i - 1}, c_{i}) = {hamming_distance(prev, cur)}")
        if i - 1 < len(chain.steps):
            st = chain.steps[i - 1]
            if not (1 <= st.j < st.k <= n):
                out.append(f"step {i} has bad indices")
                continue
            if not (ZERO <= st.delta < st.Delta) or st.lam != (st.Delta + st.delta) / (2 * st.Delta):
                out.append(f"step {i} transfer data inconsistent")
                continue
            if mat_vec(step_to_ttransform(st, n), prev) != cur:
                out.append(f"T-transform of step {i} does not map c_{i - 1} to c_{i}")
    return out


# -- matrices ---------------------------------------------------------------

def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_mul(p: Matrix, q: Matrix) -> Matrix:
    n, m = len(q), len(q[0])
    return tuple(tuple(sum((row[t] * q[t][j] for t in range(n)), ZERO) for j in range(m))
                 for row in p)


def mat_vec(p: Matrix, v: Sequence) -> RVector:
    return RVector(sum((r * x for r, x in zip(row, v)), ZERO) for row in p)


def matrix_to_json(m: Matrix) -> list:
    return [[format_rational(x) for x in row] for row in m]


def matrix_from_json(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def perm_matrix(sigma: Permutation) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in sigma.matrix())


@dataclass(frozen=True)
class DoublyStochastic:
    entries: Matrix

    def __post_init__(self):
        m = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", m)
        problem = doubly_stochastic_problem(m)
        if problem:
            raise InputError(problem)

    @property
    def n(self) -> int:
        return len(self.entries)

    def apply(self, v) -> RVector:
        return mat_vec(self.entries, v)

    def to_json(self) -> list:
        return matrix_to_json(self.entries)


def doubly_stochastic_problem(m: Matrix) -> Optional[str]:
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        return "matrix must be square and nonempty"
    if any(x < 0 for row in m for x in row):
        return "matrix has a negative entry"
    for i, row in enumerate(m):
        if sum(row) != 1:
            return f"row {i + 1} sums to {format_rational(sum(row))}"
    for j in range(n):
        col = sum(m[i][j] for i in range(n))
        if col != 1:
            return f"column {j + 1} sums to {format_rational(col)}"
    return None


def step_to_ttransform(step: TransferStep, n: int) -> Matrix:
    """λI + (1-λ)P_(j,k) for the step's mixing weight λ."""
    if not (1 <= step.j <= n and 1 <= step.k <= n) or step.j == step.k:
        raise InputError(f"step indices ({step.j}, {step.k}) invalid for n = {n}")
    lam = step.lam
    j, k = step.j - 1, step.k - 1
    rows = [list(r) for r in identity_matrix(n)]
    rows[j][j] = rows[k][k] = lam
    rows[j][k] = rows[k][j] = 1 - lam
    return tuple(tuple(r) for r in rows)


def _sort_matrix(order: Sequence[int]) -> Matrix:
    """Q with (Q v)_i = v[order[i]]."""
    n = len(order)
    return tuple(tuple(ONE if order[i] == j else ZERO for j in range(n)) for i in range(n))


def hlp_matrix(a, b) -> DoublyStochastic:
    """Doubly stochastic S with b = S a, built from the transfer chain."""
    a, b = RVector(a), RVector(b)
    verdict = majorizes(a, b)
    if not verdict.holds:
        raise InputError(f"b is not majorized by a ({verdict.relation.value})")
    n = len(a)
    to_sorted = _sort_matrix(decreasing_order(a))
    from_sorted = tuple(zip(*_sort_matrix(decreasing_order(b))))  # transpose
    m = to_sorted
    if verdict.strict:
        for step in build_chain(a, b).steps:
            m = mat_mul(step_to_ttransform(step, n), m)
    m = mat_mul(from_sorted, m)
    s = DoublyStochastic(m)
    if s.apply(a) != b:
        raise InvariantError("HLP matrix does not map a to b")
    return s


# -- Birkhoff ---------------------------------------------------------------

@dataclass(frozen=True)
class BirkhoffDecomposition:
    terms: tuple[tuple[Fraction, Permutation], ...]

    def reconstruct(self) -> Matrix:
        n = self.terms[0][1].n
        acc = [[ZERO] * n for _ in range(n)]
        for t, sigma in self.terms:
            for j in range(1, n + 1):
                acc[sigma(j) - 1][j - 1] += t
        return tuple(tuple(r) for r in acc)

    def to_json(self) -> list:
        return [{"weight": format_rational(t), "sigma": s.cycle_string()} for t, s in self.terms]


def _augment(col: int, support, match_row: list, seen: list, blocked_rows) -> bool:
    for row in support[col]:
        if row in blocked_rows or seen[row]:
            continue
        seen[row] = True
        if match_row[row] is None or _augment(match_row[row], support, match_row, seen,
                                              blocked_rows):
            match_row[row] = col
            return True
    return False


def _completable(support, n: int, fixed: dict) -> bool:
    """Can the partial column->row assignment ``fixed`` extend to a perfect matching?"""
    blocked_rows = set(fixed.values())
    match_row: list = [None] * n
    for col in range(n):
        if col in fixed:
            continue
        if not _augment(col, support, match_row, [False] * n, blocked_rows):
            return False
    return True


def lex_smallest_matching(m: Matrix) -> Optional[Permutation]:
    """Lexicographically smallest σ with m[σ(j)][j] > 0 for every column j."""
    n = len(m)
    support = [[i for i in range(n) if m[i][j] > 0] for j in range(n)]
    fixed: dict[int, int] = {}
    for col in range(n):
        for row in support[col]:
            if row in fixed.values():
                continue
            fixed[col] = row
            if _completable(support, n, fixed):
                break
            del fixed[col]
        else:
            return None
    return Permutation(tuple(fixed[j] + 1 for j in range(n)))


def birkhoff_decompose(s) -> BirkhoffDecomposition:
    """Greedy exact decomposition of a doubly stochastic matrix into permutation matrices."""
    if not isinstance(s, DoublyStochastic):
        s = DoublyStochastic(s)
    n = s.n
    rest = [list(r) for r in s.entries]
    terms = []
    while any(x != 0 for r in rest for x in r):
        sigma = lex_smallest_matching(tuple(tuple(r) for r in rest))
        if sigma is None:
            raise InvariantError("positive support has no perfect matching")
        t = min(rest[sigma(j) - 1][j - 1] for j in range(1, n + 1))
        for j in range(1, n + 1):
            rest[sigma(j) - 1][j - 1] -= t
        terms.append((t, sigma))
    dec = BirkhoffDecomposition(tuple(terms))
    if sum(t for t, _ in terms) != 1 or dec.reconstruct() != s.entries:
        raise InvariantError("Birkhoff decomposition does not reconstruct the matrix")
    if len(terms) > (n - 1) ** 2 + 1:
        raise InvariantError(f"{len(terms)} Birkhoff terms exceeds (n-1)^2+1")
    return dec


def birkhoff_problems(dec: BirkhoffDecomposition, s: Matrix) -> list[str]:
    out = []
    n = len(s)
    if any(not (ZERO <= t <= ONE) for t, _ in dec.terms):
        out.append("weight outside [0, 1]")
    if sum((t for t, _ in dec.terms), ZERO) != 1:
        out.append("weights do not sum to 1")
    if any(sig.n != n for _, sig in dec.terms):
        out.append("permutation degree mismatch")
    elif dec.terms and dec.reconstruct() != tuple(tuple(r) for r in s):
        out.append("Σ t_σ P_σ differs from the matrix")
    if len(dec.terms) > (n - 1) ** 2 + 1:
        out.append("too many terms")
    return out
