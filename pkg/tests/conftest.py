import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from majorize.core import RVector
from majorize.perms import Permutation, generate_group


# -- oracles kept independent of the library code paths -------------------------

def karamata_majorized(a, b):
    """b ⪯ a via the hinge-function test: Σ(b_i - t)^+ <= Σ(a_i - t)^+ for all t, equal totals."""
    a, b = list(map(Fraction, a)), list(map(Fraction, b))
    if sum(a) != sum(b):
        return False
    for t in set(a) | set(b):
        if sum(max(x - t, 0) for x in b) > sum(max(x - t, 0) for x in a):
            return False
    return True


def brute_symmetric_mean(x, a, perms):
    """Literal (1/|G|) Σ_σ Π_i x_{σ(i)}^{a_i} with Fraction powers."""
    total = Fraction(0)
    for images in perms:
        term = Fraction(1)
        for i, ai in enumerate(a):
            term *= Fraction(x[images[i] - 1]) ** int(ai)
        total += term
    return total / len(perms)


def all_perms(n):
    return list(itertools.permutations(range(1, n + 1)))


def brute_closure(n, gens):
    """Multiply the set by the generators until nothing new appears."""
    elems = {tuple(range(1, n + 1))}
    while True:
        new = {tuple(g[h[j] - 1] for j in range(n)) for g in elems for h in gens} | elems
        if new == elems:
            return elems
        elems = new


# -- random generators shared by property and acceptance tests --------------------

def random_transfer(rng, v, integral=True):
    """One Robin-Hood transfer on v; returns a vector majorized by v."""
    v = list(v)
    n = len(v)
    i, j = rng.sample(range(n), 2)
    if v[i] < v[j]:
        i, j = j, i
    gap = v[i] - v[j]
    if gap == 0:
        return v
    if integral:
        if gap < 2:
            return v
        move = rng.randint(1, int(gap) // 2)
    else:
        move = gap * Fraction(rng.randint(1, 4), 8)
    v[i] -= move
    v[j] += move
    return v


def random_majorized_pair(rng, n, hi=12, strict=True, integral=True):
    """(a, b) with b ≺ a (or b ⪯ a if not strict), integer entries in [0, hi]."""
    while True:
        a = [rng.randint(0, hi) for _ in range(n)]
        b = list(a)
        for _ in range(rng.randint(1, 4)):
            b = random_transfer(rng, b, integral)
        rng.shuffle(b)
        if not strict or sorted(a) != sorted(b):
            return RVector(a), RVector(b)


def random_equal_total_pair(rng, n, hi=12):
    while True:
        a = [rng.randint(0, hi) for _ in range(n)]
        b = [rng.randint(0, hi) for _ in range(n)]
        diff = sum(a) - sum(b)
        k = rng.randrange(n)
        b[k] += diff
        if b[k] >= 0:
            return RVector(a), RVector(b)


def random_positive_x(rng, n, nonconstant=True):
    while True:
        x = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(n)]
        if not nonconstant or len(set(x)) > 1:
            return RVector(x)


def random_permutation(rng, n):
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def random_subgroup(rng, n):
    gens = [random_permutation(rng, n) for _ in range(rng.randint(1, 2))]
    return generate_group(n, gens)


def random_multiplicative_pair(rng, n):
    """Positive non-increasing u, v with every prefix product of v at most that of u, u != v."""
    while True:
        u = sorted((Fraction(rng.randint(1, 40), rng.randint(1, 8)) for _ in range(n)), reverse=True)
        v, pu, pv = [], Fraction(1), Fraction(1)
        for j in range(n):
            pu *= u[j]
            bound = pu / pv
            if v:
                bound = min(bound, v[-1])
            vj = bound if rng.random() < 0.3 else bound * Fraction(rng.randint(1, 9), 10)
            v.append(vj)
            pv *= vj
        if u != v:
            return RVector(u), RVector(v)


@pytest.fixture
def rng():
    return random.Random(20261019)


# -- hypothesis strategies ------------------------------------------------------

small_rationals = st.fractions(min_value=0, max_value=12, max_denominator=4)
positive_rationals = st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8)


def vectors(elements=small_rationals, min_n=1, max_n=5):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(elements, min_size=n, max_size=n).map(RVector))


def same_length(n, elements=small_rationals):
    return st.lists(elements, min_size=n, max_size=n).map(RVector)


permutations_of = lambda n: st.permutations(range(1, n + 1)).map(lambda p: Permutation(tuple(p)))  # noqa: E731


def pytest_terminal_summary(terminalreporter):
    import sys
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
