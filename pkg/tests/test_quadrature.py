import math
from fractions import Fraction

import pytest

from quartic.quadrature import closed_form_n04, gauss_composite, landen_q1_check, quadrature_n04


def test_gauss_composite_on_known_integral():
    val, err = gauss_composite(lambda x: x**3, 0.0, 2.0, 1e-12)
    assert abs(val - 4.0) < 1e-12


@pytest.mark.parametrize("m", [0, 1, 3])
def test_a_equals_zero_matches_beta(m):
    want = math.gamma(0.25) * math.gamma(m + 0.75) / (4 * math.factorial(m))
    assert quadrature_n04(0, m) == pytest.approx(want, rel=1e-11)
    assert closed_form_n04(0, m) == pytest.approx(want, rel=1e-12)


def test_pi_over_four():
    assert closed_form_n04(1, 0) == pytest.approx(math.pi / 4, rel=1e-14)


def test_landen_report():
    assert landen_q1_check(Fraction(5, 2), 3).passed


def test_domain():
    with pytest.raises(ValueError):
        quadrature_n04(-1, 0)
    with pytest.raises(ValueError):
        quadrature_n04(0, -1)
    with pytest.raises(ValueError):
        quadrature_n04(0, 0, tol=1e-20)
