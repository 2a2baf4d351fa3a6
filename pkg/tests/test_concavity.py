import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from quartic.concavity import (
    classify,
    fisk_probe,
    inf_lc_probe,
    is_log_concave,
    is_unimodal,
    l_operator,
    log_concavity_witness,
    newton_harness,
    r_factor_certify,
    r_factor_depth,
    random_nondecreasing,
    random_real_rooted,
    shift_unimodal_check,
)
from quartic.core import d_row, nice_a
from quartic.poly import Poly

positive = st.lists(st.integers(1, 1000), min_size=1, max_size=12)


@given(positive)
def test_log_concave_positive_is_unimodal(seq):
    if is_log_concave(seq):
        assert is_unimodal(seq)


def test_internal_zero_breaks_the_implication():
    assert is_log_concave([1, 0, 0, 1]) and not is_unimodal([1, 0, 0, 1])


@given(positive)
def test_l_operator_sign_is_log_concavity(seq):
    image = l_operator(seq)
    assert all(x >= 0 for x in image[1:-1]) == (log_concavity_witness(seq) is None)


def test_classify():
    c = classify([1, 3, 2, 5])
    assert not c.unimodal and c.log_concave is False and c.witness == 2
    assert classify([1, -1]).log_concave is None


@pytest.mark.parametrize("m", [5, 20, 60])
def test_d_rows(m):
    c = classify(d_row(m))
    assert c.unimodal and c.log_concave


def test_nice_a_m5():
    assert log_concavity_witness(list(nice_a(5).coeffs)) == 4


def test_inf_lc_probe():
    assert inf_lc_probe(d_row(10), 4).passed
    rep = inf_lc_probe([1, 1, 1], 3)
    assert rep.passed is False and rep.witness["depth"] == 2


@pytest.mark.parametrize("n", [2, 4, 10, 30])
def test_pascal_certified(n):
    row = [comb(n, k) for k in range(n + 1)]
    assert r_factor_certify(row, max_depth=8)


def test_r_factor_literal():
    assert r_factor_depth([1, 3, 1]) == 0
    assert not r_factor_certify([1, 1, 1])


@given(st.integers(0, 10**6))
def test_shift_unimodal(seed):
    seq = random_nondecreasing(random.Random(seed))
    ok, coeffs = shift_unimodal_check(seq)
    assert ok
    assert sum(coeffs) == Poly(seq)(2)


def test_shift_rejects_decreasing():
    with pytest.raises(ValueError):
        shift_unimodal_check([3, 2])


@given(st.integers(0, 10**6))
def test_random_real_rooted_is_log_concave(seed):
    p = random_real_rooted(random.Random(seed))
    assert is_log_concave(list(p.coeffs))


def test_newton_and_fisk():
    assert newton_harness(100, seed=3).passed
    assert fisk_probe(Poly.from_roots([-1, -2, -3])).passed
    with pytest.raises(ValueError):
        fisk_probe(Poly((1, 0, 1)))


def test_fractions_supported():
    assert is_log_concave([Fraction(1, 2), Fraction(1), Fraction(1, 3)])
