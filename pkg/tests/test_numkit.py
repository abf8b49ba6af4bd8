import pytest
from hypothesis import given, strategies as st

from madfa.numkit import binomial, catalan, compositions, multinomial, partial_sum, partial_sums


def test_compositions_small():
    assert list(compositions(0)) == [()]
    assert sorted(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]


def test_compositions_count_ten():
    assert sum(1 for _ in compositions(10)) == 512


@given(st.integers(min_value=1, max_value=9))
def test_compositions_sum_and_distinct(n):
    items = list(compositions(n))
    assert len(items) == 2 ** (n - 1) == len(set(items))
    assert all(sum(c) == n and min(c) >= 1 for c in items)


def test_compositions_lex_order():
    items = list(compositions(5))
    assert items == sorted(items)


def test_compositions_rejects_negative():
    with pytest.raises(ValueError):
        list(compositions(-1))


@pytest.mark.parametrize("n,k,expected", [(5, 2, 10), (1, 2, 0), (10, 0, 1), (3, -1, 0)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_big():
    assert binomial(100, 50) == 100891344545564193334812497256


def test_multinomial():
    assert multinomial((2, 1)) == 3
    assert multinomial((1, 1, 1)) == 6
    assert multinomial(()) == 1


@pytest.mark.parametrize("i,expected", [(0, 0), (2, 3), (3, 6)])
def test_partial_sum(i, expected):
    assert partial_sum((2, 1, 3), i) == expected


def test_partial_sum_out_of_range():
    with pytest.raises(IndexError):
        partial_sum((2, 1, 3), 4)


def test_partial_sums():
    assert partial_sums((2, 1, 3)) == [0, 2, 3, 6]


def test_catalan():
    assert [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
