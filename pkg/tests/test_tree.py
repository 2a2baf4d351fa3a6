import pytest
from hypothesis import given, strategies as st

from quartic.kernel import nu2
from quartic.tree import (
    Case,
    build_tree,
    c_series,
    c_values,
    gamma1,
    gammas,
    kstar,
    piecewise_formula,
    tree_shape,
    verify_piecewise,
)
from quartic.valuation import a_number

L13 = [36, 37, 36, 40, 38, 39, 38, 40, 40, 38, 39, 38, 40]


def test_l3_formula():
    f = piecewise_formula(3)
    assert [c.as_tuple() for c in f.cases] == [(2, 1, 7, 1), (4, 2, 9, 2), (4, 4, 9, 0)]


def test_l13_formula():
    f = piecewise_formula(13)
    assert sorted(c.constant for c in f.cases) == sorted(L13)
    assert len(f.cases) == 13 and f.is_partition()


def test_c_values_from_exact_numbers():
    # C_{3,m} = A_{3, 3+2(m-1)}
    assert list(c_values(3, 5)) == [nu2(a_number(3, 3 + 2 * (m - 1))) for m in range(1, 6)]
    assert c_series(3, 5).values == [7, 9, 8, 9, 7]


@pytest.mark.parametrize("l", [1, 3, 5, 7, 9, 11, 13, 15, 21, 39])
def test_odd_formulas(l):
    assert verify_piecewise(l, 128).passed
    t = build_tree(l)
    assert t.shape_matches_theory()


@pytest.mark.parametrize("l", range(2, 41, 2))
def test_even_formulas_with_pair_spacing(l):
    assert verify_piecewise(l, 128, spacing="pair").passed
    assert build_tree(l, spacing="pair").shape_matches_theory()


@pytest.mark.parametrize("l", [3, 5, 7])
def test_odd_part_invariance_with_block_spacing(l):
    base = tree_shape(build_tree(l))
    assert tree_shape(build_tree(2 * l)) == base == tree_shape(build_tree(4 * l))


@given(st.integers(1, 200))
def test_formula_partitions(l):
    assert piecewise_formula(l).is_partition()


def test_tree5_shape():
    t = build_tree(5)
    assert tree_shape(t) == ((None, None), (None, (None, None)))
    assert sorted(n.gamma for n in t.terminals()) == [13, 13, 14, 16, 16]


def test_gamma_helpers():
    assert kstar(13) == 3 and kstar(16) == 4
    with pytest.raises(ValueError):
        gamma1(1, 0, 5)
    assert gammas(1, 0, 5).gamma1 is None


def test_case_evaluation():
    c = Case(4, 2, 9, 2)
    assert c.matches(6) and not c.matches(5)
    assert c.evaluate(6) == 9 + nu2(8 // 4)
