from math import comb

import pytest
from hypothesis import given, strategies as st

from quartic.poly import LaurentPoly, Poly
from quartic.qanalogs import (
    diagonal_lowest_degree,
    family_sequence,
    gaussian_binomial,
    gaussian_depth2_witness,
    gaussian_to_quantum,
    lowest_term,
    q_l_operator,
    quantum_binomial,
    quantum_conjecture_probe,
)

nk = st.integers(0, 16).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n)))


@given(nk)
def test_q_pascal(p):
    n, k = p
    if n == 0 or k == 0:
        assert gaussian_binomial(n, k) == Poly((1,))
        return
    rhs = gaussian_binomial(n - 1, k - 1) + Poly.monomial(k) * gaussian_binomial(n - 1, k)
    assert gaussian_binomial(n, k) == rhs


@given(nk)
def test_q_equals_one(p):
    n, k = p
    assert gaussian_binomial(n, k)(1) == comb(n, k)
    assert quantum_binomial(n, k).evaluate(1) == comb(n, k)


@given(nk)
def test_quantum_relation_and_symmetry(p):
    n, k = p
    q = quantum_binomial(n, k)
    assert q == gaussian_to_quantum(n, k)
    assert q == q.invert()
    assert q == quantum_binomial(n, n - k)


def test_depth2_witness_is_real():
    rep = gaussian_depth2_witness(12)
    assert rep.passed
    w = rep.witness
    row = [gaussian_binomial(w["n"], k) for k in range(w["n"] + 1)]
    twice, _ = q_l_operator(q_l_operator(row)[0])
    assert twice[w["k"]].coeffs[w["exponent"]] == w["coefficient"] < 0


@pytest.mark.parametrize("family,n", [("row", 6), ("row", 10), ("column", 2), ("column", 4)])
def test_probes(family, n):
    assert quantum_conjecture_probe(family, n, depth=3, bound=10).passed


def test_diagonal_probe():
    assert quantum_conjecture_probe("diagonal", 1, depth=2, bound=6, u=1, v=2).passed


def test_family_errors():
    with pytest.raises(ValueError):
        family_sequence("diagonal", 0, 5, 3, 1)
    with pytest.raises(ValueError):
        family_sequence("nope")


@pytest.mark.parametrize("n,u,v", [(0, 2, 1), (3, 3, 1), (5, 4, 3)])
def test_lowest_term(n, u, v):
    e, c = lowest_term(n, u, v)
    assert c == -1 == diagonal_lowest_degree(n, u, v)
    diff = quantum_binomial(n + u, v) ** 2 - quantum_binomial(n + 2 * u, 2 * v)
    assert all(exp >= e for exp, _ in diff.items())


def test_laurent_square_difference_at_one():
    # at q = 1 the difference is an ordinary binomial identity check
    d = quantum_binomial(5, 2) ** 2 - quantum_binomial(7, 4)
    assert d.evaluate(1) == comb(5, 2) ** 2 - comb(7, 4)
    assert isinstance(d, LaurentPoly)
