"""The coefficients d_{l,m}, the polynomials P_m, T_m and the path-count oracle.

Three independent routes to d_{l,m} are provided:

``single``
    the positive single sum over k;
``triple``
    the signed triple sum produced by the double-angle evaluation;
``center``
    the alpha/beta form built on the products of (4k-1) and (4k+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial

from .alphabeta import alpha_value, beta_value
from .kernel import binomial
from .poly import Poly, taylor_shift

__all__ = [
    "METHODS",
    "DTable",
    "d_coeff",
    "d_row",
    "d_table",
    "a_row",
    "p_poly",
    "nice_a",
    "t_poly",
    "enumerate_paths",
    "PATH_ENUMERATION_LIMIT",
]

METHODS = ("single", "triple", "center")
PATH_ENUMERATION_LIMIT = 4


def _check_lm(l: int, m: int) -> None:
    if l < 0 or m < 0:
        raise ValueError(f"indices must be nonnegative, got l={l}, m={m}")
    if l > m:
        raise ValueError(f"need l <= m, got l={l}, m={m}")


def _d_single(l: int, m: int) -> Fraction:
    total = 0
    for k in range(l, m + 1):
        total += (comb(2 * m - 2 * k, m - k) * comb(m + k, m) * comb(k, l)) << k
    return Fraction(total, 1 << (2 * m))


def _d_triple(l: int, m: int) -> Fraction:
    # scaled by 2^{3m}; the loop bounds keep every binomial argument in range
    central = [comb(2 * k, k) << (3 * (m - k)) for k in range(m + 1)]
    total = 0
    for j in range(l + 1):
        lj = l - j
        for s in range(m - l + 1):
            sj = s + j
            top = m - sj
            inner = 0
            sign = 1
            for k in range(s + l, m + 1):
                inner += sign * central[k] * comb(top, m - k) * comb(k - sj, lj)
                sign = -sign
            total += comb(2 * m + 1, 2 * sj) * comb(sj, j) * inner
    return Fraction(total, 1 << (3 * m))


def _prod_4k(m: int, sign: int) -> int:
    out = 1
    for k in range(1, m + 1):
        out *= 4 * k + sign
    return out


def _d_center(l: int, m: int) -> Fraction:
    num = alpha_value(l, m) * _prod_4k(m, -1) - beta_value(l, m) * _prod_4k(m, 1)
    return Fraction(num, factorial(l) * factorial(m) << (m + l))


_ROUTES = {"single": _d_single, "triple": _d_triple, "center": _d_center}


def d_coeff(l: int, m: int, method: str = "single") -> Fraction:
    """Exact d_{l,m} for 0 <= l <= m by the chosen route."""
    _check_lm(l, m)
    try:
        route = _ROUTES[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}") from None
    return route(l, m)


def _nice_a_scaled(m: int) -> list:
    """2^{2m} times the coefficients of niceA, as integers."""
    return [(comb(2 * m - 2 * k, m - k) * comb(m + k, m)) << k for k in range(m + 1)]


def d_row(m: int) -> list:
    """[d_{0,m}, ..., d_{m,m}] from the single sum, via one integer Taylor shift.

    sum_k w_k C(k, l) is the coefficient of a^l in sum_k w_k (a+1)^k.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    shifted = taylor_shift(Poly(_nice_a_scaled(m)), 1)
    den = 1 << (2 * m)
    return [Fraction(shifted[l], den) for l in range(m + 1)]


def a_row(m: int) -> list:
    """[A_{0,m}, ..., A_{m,m}] with A_{l,m} = l! m! 2^{m+l} d_{l,m}, exact integers."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    shifted = taylor_shift(Poly(_nice_a_scaled(m)), 1)
    fm = factorial(m)
    out = []
    fl = 1
    for l in range(m + 1):
        if l:
            fl *= l
        num = (fl * fm * shifted[l]) << l
        q, r = divmod(num, 1 << m)
        if r:
            raise ArithmeticError(f"A_{{{l},{m}}} is not an integer")
        out.append(q)
    return out


@dataclass(frozen=True)
class DTable:
    """Triangular table entries[m][l] = d_{l,m} for 0 <= l <= m <= m_max."""

    m_max: int
    method: str
    entries: tuple

    def __getitem__(self, lm: tuple) -> Fraction:
        l, m = lm
        return self.entries[m][l]

    def rows(self):
        return iter(self.entries)


def d_table(m_max: int, method: str = "single") -> DTable:
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    if method == "single":
        rows = tuple(tuple(d_row(m)) for m in range(m_max + 1))
    else:
        rows = tuple(
            tuple(d_coeff(l, m, method) for l in range(m + 1)) for m in range(m_max + 1)
        )
    return DTable(m_max, method, rows)


def nice_a(m: int) -> Poly:
    """The polynomial A(x) with P_m(x) = A(x + 1)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    den = 1 << (2 * m)
    return Poly(Fraction(c, den) for c in _nice_a_scaled(m))


def _p_expanded(m: int) -> Poly:
    # 2^{-m} sum_k 2^{-k} C(2k,k) C(2m-k,m) (a+1)^{m-k}
    b = Poly((1, 1))
    acc = Poly()
    for k in range(m + 1):
        c = Fraction(comb(2 * k, k) * comb(2 * m - k, m), 1 << (m + k))
        acc = acc + b ** (m - k) * c
    return acc


def _p_shifted(m: int) -> Poly:
    # sum_j C(2m+1,2j) (a+1)^j sum_k C(m-j,k) C(2(m-k),m-k) 2^{-3(m-k)} (a-1)^{m-k-j}
    ap, am = Poly((1, 1)), Poly((-1, 1))
    acc = Poly()
    for j in range(m + 1):
        inner = Poly()
        for k in range(m - j + 1):
            c = Fraction(comb(m - j, k) * comb(2 * (m - k), m - k), 1 << (3 * (m - k)))
            inner = inner + am ** (m - k - j) * c
        acc = acc + ap**j * inner * comb(2 * m + 1, 2 * j)
    return acc


def p_poly(m: int, method: str = "expanded") -> Poly:
    """P_m(a) = sum_l d_{l,m} a^l by one of two closed forms in powers of (a+1)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if method == "expanded":
        return _p_expanded(m)
    if method == "shifted":
        return _p_shifted(m)
    raise ValueError(f"unknown method {method!r}")


def t_poly(m: int) -> Poly:
    """T_m(y) = sum_k C(m+k, m-k) y^{2k}."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    coeffs = [0] * (2 * m + 1)
    for k in range(m + 1):
        coeffs[2 * k] = comb(m + k, m - k)
    return Poly(coeffs)


def enumerate_paths(m: int) -> int:
    """Brute-force count of (2m+1)-step N/S/E/W walks from the origin ending on the y-axis."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > PATH_ENUMERATION_LIMIT:
        raise ValueError(
            f"enumeration visits 4^(2m+1) walks; m={m} exceeds the bound {PATH_ENUMERATION_LIMIT}"
        )
    steps = (0, 0, 1, -1)  # x-displacement of N, S, E, W
    return sum(1 for walk in product(steps, repeat=2 * m + 1) if sum(walk) == 0)
