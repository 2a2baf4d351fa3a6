from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quartic.core import a_row
from quartic.kernel import nu, nu2
from quartic.valuation import (
    a_column_kp,
    a_number,
    b_number,
    b_recurrence_check,
    block_structure,
    composition,
    least_squares_slope,
    nu2_a,
    nu2_kp_table,
    nup_series,
    reduce_sequence,
    simple_block_size,
    x_sequence,
)

lm = st.integers(1, 60).flatmap(lambda m: st.tuples(st.integers(1, m), st.just(m)))


@given(lm)
def test_formula_matches_exact_integer(p):
    l, m = p
    assert nu2_a(l, m) == nu2(a_row(m)[l]) == nu2_a(l, m, "direct")


@given(st.integers(1, 200))
def test_first_column(m):
    assert nu2_a(1, m) == nu2(m * (m + 1)) + 1


def test_kp_recurrence_matches_rows():
    for m, col in a_column_kp(6, 40):
        row = a_row(m)
        assert list(col[: min(7, m + 1)]) == row[: min(7, m + 1)]


def test_kp_table():
    t = nu2_kp_table(4, 30)
    assert t[2, 10] == nu2(a_row(10)[2])


def test_b_numbers():
    assert a_number(1, 2) == 60
    assert b_number(1, 3) == 43
    assert b_recurrence_check(30).passed


@given(lm)
def test_b_is_odd_integer(p):
    l, m = p
    b = b_number(l, m)
    assert isinstance(b, int) and b % 2 == 1


@given(st.integers(1, 40))
def test_x_sequence_sources_agree(l):
    assert np.array_equal(x_sequence(l, 128), x_sequence(l, 128, "direct"))


@given(st.integers(1, 64))
def test_block_structure(l):
    rep = block_structure(l)
    assert rep.passed
    assert rep.predicted_s == 2 ** (1 + nu2(l))


def test_simple_block_size():
    seq = np.repeat(np.arange(16), 4)
    assert simple_block_size(seq) == 2


@given(st.integers(1, 2**20))
def test_composition_reassembles(l):
    parts = composition(l)
    assert all(p >= 1 for p in parts)
    rebuilt, pos = 0, -1
    for p in parts:
        pos += p
        rebuilt |= 1 << pos
    assert rebuilt == l


@pytest.mark.parametrize("l", [1, 2, 3, 5, 13, 24, 65, 100])
def test_reduction(l):
    assert reduce_sequence(l).omega == composition(l)


def test_p_adic_series():
    s = nup_series(3, 1, 30)
    assert s.values == [nu(3, a_row(m)[1]) for m in range(1, 31)]
    assert s.errors[0] == Fraction(s.values[0]) - Fraction(1, 2)
    assert abs(least_squares_slope(nup_series(5, 1, 400)) - 0.25) < 0.05


def test_invalid():
    with pytest.raises(ValueError):
        composition(0)
    with pytest.raises(ValueError):
        nup_series(4, 1, 5)
