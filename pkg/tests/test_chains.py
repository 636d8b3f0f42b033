import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_majorized_pair, random_positive_x
from majorize.chains import (DoublyStochastic, TransferStep, birkhoff_decompose, build_chain,
                             chain_problems, hlp_matrix, lex_smallest_matching, mat_mul,
                             mat_vec, perm_matrix, step_to_ttransform)
from majorize.core import RVector, hamming_distance, majorizes
from majorize.errors import InputError
from majorize.means import Order, compare_means
from majorize.perms import Permutation, act_on_vector, full_symmetric_group, parse_cycles

F = Fraction


def test_chain_single_step():
    c = build_chain([10, 0], [5, 5])
    assert c.vectors == (RVector([10, 0]), RVector([5, 5]))
    s = c.steps[0]
    assert (s.j, s.k, s.rho, s.Delta, s.delta, s.lam) == (1, 2, 5, 5, 0, F(1, 2))


def test_chain_three_coordinates():
    c = build_chain([3, 2, 1], [2, 2, 2])
    assert c.length == 1
    assert (c.steps[0].j, c.steps[0].k, c.steps[0].amount) == (1, 3, 1)


def test_ten_zero_ladder_is_stepwise_strict():
    ladder = [[10, 0], [9, 1], [8, 2], [7, 3], [6, 4], [5, 5]]
    for hi, lo in zip(ladder, ladder[1:]):
        c = build_chain(hi, lo)
        assert c.length == 1 and hamming_distance(*c.vectors) == 2


def test_chain_without_resorting():
    # first-surplus/first-deficit with a re-sort would give (4,3,2): distance 3
    c = build_chain([5, 4, 0], [3, 3, 3])
    assert not chain_problems(c, [5, 4, 0], [3, 3, 3])
    assert [list(v) for v in c.vectors] == [[5, 4, 0], [5, 3, 1], [3, 3, 3]]


def test_chain_rejects():
    with pytest.raises(InputError):
        build_chain([6, 4], [7, 3])
    with pytest.raises(InputError):
        build_chain([5, 5], [5, 5])
    with pytest.raises(InputError):
        build_chain([4, -1], [2, 1])


def test_ttransform_examples():
    step = TransferStep(1, 2, F(5), F(5), F(1), F(3, 5))
    m = step_to_ttransform(step, 2)
    assert m == ((F(3, 5), F(2, 5)), (F(2, 5), F(3, 5)))
    assert mat_vec(m, [10, 0]) == RVector([6, 4])
    ident = step_to_ttransform(TransferStep(1, 3, F(1), F(1), F(1), F(1)), 3)
    assert ident == tuple(tuple(F(int(i == j)) for j in range(3)) for i in range(3))
    half = step_to_ttransform(TransferStep(1, 2, F(1), F(1), F(0), F(1, 2)), 2)
    assert all(x == F(1, 2) for row in half for x in row)
    with pytest.raises(InputError):
        step_to_ttransform(step, 1)


def test_hlp_examples():
    assert hlp_matrix([10, 0], [5, 5]).entries == ((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2)))
    s = hlp_matrix([3, 2, 1], [2, 2, 2])
    assert s.apply([3, 2, 1]) == RVector([2, 2, 2])
    assert hlp_matrix([4, 1, 2], [4, 1, 2]).entries == perm_matrix(Permutation.identity(3))
    p = hlp_matrix([4, 1, 2], [2, 4, 1])
    assert sorted(x for row in p.entries for x in row) == [0] * 6 + [1] * 3
    with pytest.raises(InputError):
        hlp_matrix([6, 4], [7, 3])


def test_birkhoff_examples():
    sigma = parse_cycles("(1,3,2)", 3)
    d = birkhoff_decompose(perm_matrix(sigma))
    assert d.terms == ((F(1), sigma),)
    d = birkhoff_decompose(((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2))))
    assert d.terms == ((F(1, 2), Permutation.identity(2)), (F(1, 2), parse_cycles("(1,2)", 2)))


def test_birkhoff_rejects_non_doubly_stochastic():
    with pytest.raises(InputError):
        birkhoff_decompose(((F(1), F(1)), (F(0), F(0))))


def test_lex_smallest_matching():
    m = ((0, 1, 1), (1, 1, 0), (1, 0, 1))
    assert lex_smallest_matching(m).images == (2, 1, 3)
    assert lex_smallest_matching(((1, 1), (0, 0))) is None


@settings(max_examples=60)
@given(st.integers(2, 4), st.lists(st.permutations(range(1, 5)), min_size=1, max_size=3),
       st.lists(st.integers(1, 9), min_size=3, max_size=3))
def test_birkhoff_reconstructs_random_combinations(n, perms, raw):
    sigmas = [Permutation(tuple(x for x in p if x <= n)) for p in perms]
    weights = [F(w, sum(raw[:len(sigmas)])) for w in raw[:len(sigmas)]]
    acc = [[F(0)] * n for _ in range(n)]
    for t, s in zip(weights, sigmas):
        for j in range(1, n + 1):
            acc[s(j) - 1][j - 1] += t
    m = tuple(tuple(r) for r in acc)
    d = birkhoff_decompose(m)
    assert d.reconstruct() == m
    assert sum(t for t, _ in d.terms) == 1
    assert len(d.terms) <= (n - 1) ** 2 + 1


@settings(max_examples=80)
@given(st.integers(2, 5), st.integers(0, 2**32))
def test_chain_properties_random(n, seed):
    r = random.Random(seed)
    a, b = random_majorized_pair(r, n, integral=r.random() < 0.5)
    c = build_chain(a, b)
    assert chain_problems(c, a, b) == []
    assert c.length <= n - 1
    # Muirhead along the chain: means strictly decrease for nonconstant positive x
    if all(v.denominator == 1 for vec in c.vectors for v in vec):
        x = random_positive_x(r, n)
        g = full_symmetric_group(n)
        for hi, lo in zip(c.vectors, c.vectors[1:]):
            assert compare_means(x, hi, lo, g).order is Order.LESS


@settings(max_examples=60)
@given(st.integers(2, 5), st.integers(0, 2**32))
def test_hlp_and_birkhoff_random(n, seed):
    r = random.Random(seed)
    a, b = random_majorized_pair(r, n, strict=r.random() < 0.8)
    s = hlp_matrix(a, b)
    assert s.apply(a) == b
    assert isinstance(s, DoublyStochastic)
    d = birkhoff_decompose(s)
    assert d.reconstruct() == s.entries
    assert sum(t for t, _ in d.terms) == 1
    assert len(d.terms) <= (n - 1) ** 2 + 1
    # the Birkhoff weights exhibit b as a convex combination of permutations of a
    combo = [F(0)] * n
    for t, sigma in d.terms:
        for i, v in enumerate(act_on_vector(sigma, a)):
            combo[i] += t * v
    assert RVector(combo) == b


def test_matrix_product_of_ttransforms_is_doubly_stochastic():
    r = random.Random(3)
    a, b = random_majorized_pair(r, 5)
    m = None
    for st_ in build_chain(a, b).steps:
        t = step_to_ttransform(st_, 5)
        m = t if m is None else mat_mul(t, m)
    DoublyStochastic(m)
    assert majorizes(a, b).strict
