import functools
import itertools

import pytest

from scottlo.oracle import (
    CapExceeded, FiniteStructure, bf_le_finite, equiv_classes, interval_partition_le,
    linear_order, structure_from_json, structure_to_json,
)


@functools.lru_cache(maxsize=None)
def _naive_le(n, a, m, b, k):
    """Direct game on the orders 0..n-1 and 0..m-1: the universal player picks
    any tuple of the right order, the answer is a tuple of the left one."""
    if len(a) != len(b):
        return False
    for i in range(len(a)):
        for j in range(len(a)):
            if (a[i] < a[j]) != (b[i] < b[j]) or (a[i] == a[j]) != (b[i] == b[j]):
                return False
    if k == 0:
        return True
    for size in range(m + 1):
        for d in itertools.product(range(m), repeat=size):
            if not any(_naive_le(m, b + d, n, a + c, k - 1)
                       for c in itertools.product(range(n), repeat=size)):
                return False
    return True


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 4) for m in range(1, 4)])
def test_finite_orders_match_direct_game(n, m):
    A, B = linear_order(n), linear_order(m)
    for k in range(3):
        assert bf_le_finite(A, (), B, (), k) == _naive_le(n, (), m, (), k), (n, m, k)


def test_level_one_is_cardinality():
    for n in range(1, 6):
        for m in range(1, 6):
            assert bf_le_finite(linear_order(n), (), linear_order(m), (), 1) == (n >= m)


def test_isomorphic_orders_are_related_at_every_level():
    for n in range(1, 5):
        for k in range(5):
            assert bf_le_finite(linear_order(n), (), linear_order(n), (), k)


def test_interval_partitions_agree_with_oracle():
    for n in range(1, 6):
        for m in range(1, 6):
            for k in range(4):
                assert interval_partition_le(n, m, k) == bf_le_finite(linear_order(n), (), linear_order(m), (), k)


def test_caps():
    with pytest.raises(CapExceeded):
        bf_le_finite(linear_order(9), (), linear_order(2), (), 1)
    with pytest.raises(CapExceeded):
        bf_le_finite(linear_order(2), (), linear_order(2), (), 6)


def test_json_round_trip():
    s = FiniteStructure((0, 1, 2), (("E", 2),), {"E": [(0, 1), (1, 2)]})
    back = structure_from_json(structure_to_json(s))
    assert structure_to_json(back) == structure_to_json(s)
    assert back.holds("E", (0, 1)) and not back.holds("E", (1, 0))


def test_equiv_classes_of_points():
    s = linear_order(3)
    items = [(s, (x,)) for x in s.universe]
    assert equiv_classes(items, 0) == [[0, 1, 2]]
    assert equiv_classes(items, 1) == [[0], [1], [2]]
