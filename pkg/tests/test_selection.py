import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from alorusat.selection import select_kth


def test_examples():
    assert select_kth([5, 2, 8, 2, 9], 3) == 5
    assert select_kth([4], 1) == 4


@pytest.mark.parametrize("k", [0, 6, -1])
def test_k_out_of_range(k):
    with pytest.raises(IndexError):
        select_kth([1, 2, 3, 4, 5], k)


def test_thousand_random_values_against_sorting():
    rng = random.Random(11)
    values = [rng.randrange(10**6) for _ in range(1000)]
    ordered = sorted(values)
    for k in range(1, 1001, 37):
        assert select_kth(values[:], k, random.Random(k)) == ordered[k - 1]


def test_permutes_in_place_only():
    values = [3, 1, 2, 3, 3, 0]
    select_kth(values, 4)
    assert sorted(values) == [0, 1, 2, 3, 3, 3]


@given(st.lists(st.integers(0, 20), min_size=1, max_size=300), st.data())
@settings(max_examples=300, deadline=None)
def test_agrees_with_sort(values, data):
    k = data.draw(st.integers(1, len(values)))
    assert select_kth(values[:], k, random.Random(0)) == sorted(values)[k - 1]


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=100))
@settings(max_examples=100, deadline=None)
def test_floats_at_median(values):
    k = math.ceil(len(values) / 2)
    assert select_kth(values[:], k) == sorted(values)[k - 1]
