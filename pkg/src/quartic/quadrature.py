"""Numeric cross-checks of the quartic integral.

Integrals over [0, oo) are mapped to [0, pi/2) by x = tan(theta); the integrands
used here stay bounded on the closed interval, so composite Gauss-Legendre with
panel doubling converges quickly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .core import p_poly, t_poly
from .report import Report

__all__ = [
    "MIN_TOL",
    "gauss_composite",
    "quadrature_n04",
    "closed_form_n04",
    "q1_closed",
    "q1_from_landen",
    "landen_q1_check",
]

MIN_TOL = 1e-12
_NODES = 20
_MAX_PANELS = 1 << 12


@lru_cache(maxsize=None)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def _panel_sum(g: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, panels: int) -> float:
    x, w = _leggauss(_NODES)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = g(pts).reshape(panels, _NODES)
    return float(np.sum(half * (vals @ w)))


def gauss_composite(g, lo: float, hi: float, tol: float) -> tuple:
    """Integrate a smooth vectorized g on [lo, hi]; returns (value, error estimate).

    Panel count doubles until two successive estimates differ by less than tol/2.
    """
    panels = 1
    prev = _panel_sum(g, lo, hi, panels)
    while panels < _MAX_PANELS:
        panels *= 2
        cur = _panel_sum(g, lo, hi, panels)
        err = abs(cur - prev)
        if err < tol / 2:
            return cur, err
        prev = cur
    raise ArithmeticError(f"quadrature did not reach tol={tol} with {panels} panels")


def _validate(a, m: int, tol: float) -> Fraction:
    a = Fraction(a)
    if a <= -1:
        raise ValueError(f"the integral diverges for a <= -1 (got a={a})")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if not tol >= MIN_TOL:
        raise ValueError(f"tol must be at least {MIN_TOL}")
    return a


def quadrature_n04(a, m: int, tol: float = MIN_TOL) -> float:
    """Numeric value of int_0^oo dx / (x^4 + 2a x^2 + 1)^(m+1)."""
    a = _validate(a, m, tol)
    af = float(a)

    def g(theta):
        s2, c2 = np.sin(theta) ** 2, np.cos(theta) ** 2
        return c2 ** (2 * m + 1) / (s2 * s2 + 2 * af * s2 * c2 + c2 * c2) ** (m + 1)

    return gauss_composite(g, 0.0, math.pi / 2, tol)[0]


def closed_form_n04(a, m: int) -> float:
    """(pi/2) P_m(a) / [2(a+1)]^(m+1/2), with P_m(a) evaluated exactly first."""
    a = Fraction(a)
    return math.pi / 2 * float(p_poly(m)(a)) / float(2 * (a + 1)) ** (m + 0.5)


def q1_closed(a, m: int, y: float) -> float:
    """T_m(2y) / (2^m (1 + a + 2y^2)^(m+1))."""
    return float(t_poly(m)(Fraction(2 * y))) / (2**m * (1 + float(a) + 2 * y * y) ** (m + 1))


def q1_from_landen(a, m: int, y: float) -> float:
    """Q_1(y) assembled from Q at the two branches y +- sqrt(y^2+1)."""
    af = float(a)

    def q(x):
        return 1.0 / (x**4 + 2 * af * x * x + 1) ** (m + 1)

    r = math.sqrt(y * y + 1)
    plus, minus = q(y + r), q(y - r)
    return plus + minus + y / r * (plus - minus)


def landen_q1_check(a, m: int, tol: float = MIN_TOL) -> Report:
    """Integrals of Q and of the closed-form Q_1 over [0, oo) agree within tol."""
    a = _validate(a, m, tol)
    af = float(a)
    coeffs = [math.comb(m + k, m - k) * 4**k for k in range(m + 1)]

    def g_q1(theta):
        s2, c2 = np.sin(theta) ** 2, np.cos(theta) ** 2
        num = sum(c * s2**k * c2 ** (m - k) for k, c in enumerate(coeffs))
        return num / (2**m * ((1 + af) * c2 + 2 * s2) ** (m + 1))

    lhs = quadrature_n04(a, m, tol)
    rhs = gauss_composite(g_q1, 0.0, math.pi / 2, tol)[0]
    params = {"a": f"{a.numerator}/{a.denominator}", "m": m, "tol": tol}
    pointwise = []
    for y in (0.0, 0.25, 0.5, 1.0, 2.0, 5.0):
        direct, closed = q1_from_landen(a, m, y), q1_closed(a, m, y)
        pointwise.append(abs(direct - closed) / abs(closed))
    details = {"int_q": lhs, "int_q1": rhs, "max_pointwise_rel_err": max(pointwise)}
    if abs(lhs - rhs) > tol or max(pointwise) > 1e-9:
        return Report("landen_q1", params, False, witness={"int_q": lhs, "int_q1": rhs, "max_pointwise_rel_err": max(pointwise)}, details=details)
    return Report("landen_q1", params, True, details=details)
