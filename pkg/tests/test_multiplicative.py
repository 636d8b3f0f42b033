import math
import random
from fractions import Fraction
from itertools import accumulate
from operator import mul

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_multiplicative_pair
from majorize.errors import InputError
from majorize.multiplicative import (MultiplicativePair, augment, check_prefix_products,
                                     sum_dominance)

F = Fraction


def test_prefix_product_examples():
    assert check_prefix_products([4, 2], [3, 2]).ok
    assert check_prefix_products([5, 3, 1], [5, 3, 1]).ok
    c = check_prefix_products([2, 2], [3, 1])
    assert not c.ok and c.failing_j == 1


def test_pair_validation():
    with pytest.raises(InputError):
        MultiplicativePair([2, 3], [3, 2])
    with pytest.raises(InputError):
        MultiplicativePair([2, 0], [1, 1])
    with pytest.raises(InputError):
        MultiplicativePair([2, 1], [2, 1, 1])
    with pytest.raises(InputError):
        MultiplicativePair([3.0, 1], [2, 1])
    assert MultiplicativePair([4, 2], [4, 1]).diverging_index == 2
    assert MultiplicativePair([4, 2], [4, 2]).diverging_index is None


def test_augment_examples():
    aug = augment(MultiplicativePair([4, 2], [3, 2]))
    assert (aug.v_next, aug.u_next, aug.lambda_scale) == (2, F(3, 2), 1)
    assert 4 * 2 * aug.u_next == 3 * 2 * aug.v_next == 12
    aug = augment(MultiplicativePair([8, 1], [2, 2]))
    assert (aug.v_next, aug.u_next, aug.lambda_scale) == (1, F(1, 2), 4)
    aug = augment(MultiplicativePair([3, "1/3"], [3, "1/3"]))
    assert aug.u_next == aug.v_next == F(1, 3) and aug.lambda_scale == 4


def test_augment_requires_hypothesis():
    with pytest.raises(InputError):
        augment(MultiplicativePair([2, 2], [3, 1]))


def test_sum_dominance_examples():
    d = sum_dominance(MultiplicativePair([4, 2], [3, 2]))
    assert (d.sum_v, d.sum_u, d.strict) == (5, 6, True)
    d = sum_dominance(MultiplicativePair([8, 1], [2, 2]))
    assert (d.sum_v, d.sum_u) == (4, 9) and d.log_majorized
    with pytest.raises(InputError):
        sum_dominance(MultiplicativePair([3, 1], [3, 1]))


@settings(max_examples=100)
@given(st.integers(1, 6), st.integers(0, 2**32))
def test_random_pairs(n, seed):
    u, v = random_multiplicative_pair(random.Random(seed), n)
    pair = MultiplicativePair(u, v)
    assert check_prefix_products(u, v).ok
    aug = augment(pair)
    uu, vv = [*u, aug.u_next], [*v, aug.v_next]
    assert all(uu[i] >= uu[i + 1] for i in range(n)) and all(vv[i] >= vv[i + 1] for i in range(n))
    assert math.prod(uu) == math.prod(vv)
    assert aug.u_next <= aug.v_next
    assert min(uu + vv) * aug.lambda_scale > 1
    assert aug.lambda_scale == 1 or min(uu + vv) * aug.lambda_scale / 2 <= 1
    d = sum_dominance(pair)
    assert d.strict and sum(v) < sum(u)
    assert d.log_majorized


@settings(max_examples=60)
@given(st.integers(1, 5), st.integers(0, 2**32),
       st.fractions(min_value=F(1, 20), max_value=20, max_denominator=20))
def test_scaling_invariance(n, seed, lam):
    u, v = random_multiplicative_pair(random.Random(seed), n)
    su, sv = u.scale(lam), v.scale(lam)
    assert check_prefix_products(su, sv).ok
    # the prefix hypothesis is a statement about ratios of equal-length products
    assert all(p * lam ** (j + 1) == q for j, (p, q) in
               enumerate(zip(accumulate(u, mul), accumulate(su, mul))))
    assert sum_dominance(MultiplicativePair(su, sv)).strict
