"""Registry of exact identities satisfied by d_{l,m} and its companion sums.

Each checker sweeps a range of parameters and returns a :class:`Report` carrying
the first failing instance. Both sides of every identity are computed from
separate expressions; no side is derived from the other.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, Optional

from .core import d_row, t_poly
from .poly import LaurentPoly, substitute_phi
from .report import Report

__all__ = ["IDENTITIES", "DEFAULT_RANGES", "check_identity", "minexpr_values"]


def _fail(name: str, params: dict, **witness) -> Report:
    return Report(name, params, False, witness={k: _jsonable(v) for k, v in witness.items()})


def _jsonable(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, LaurentPoly):
        return str(v)
    return v


class _DRows:
    """Lazily extended rows d_{., m}, with d_{l,m} = 0 outside 0 <= l <= m."""

    def __init__(self) -> None:
        self.rows: list = []

    def __call__(self, l: int, m: int) -> Fraction:
        while len(self.rows) <= m:
            self.rows.append(d_row(len(self.rows)))
        if l < 0 or l > m:
            return Fraction(0)
        return self.rows[m][l]


def _f_sum1(m: int) -> Fraction:
    """sum_i 4^-i C(m,2i) C(2i,i), walking both binomials by their term ratios."""
    top = m // 2
    num = 0
    row, central = 1, 1  # C(m, 2i), C(2i, i)
    for i in range(top + 1):
        num += (row * central) << (2 * (top - i))
        row = row * (m - 2 * i) * (m - 2 * i - 1) // ((2 * i + 1) * (2 * i + 2))
        central = central * (2 * i + 1) * (2 * i + 2) // ((i + 1) * (i + 1))
    return Fraction(num, 1 << (2 * top))


def _sum1(m_max: int) -> Report:
    params = {"m_min": 0, "m_max": m_max}
    for m in range(m_max + 1):
        lhs = _f_sum1(m)
        rhs = Fraction(comb(2 * m, m), 2**m)
        if lhs != rhs:
            return _fail("sum1", params, m=m, lhs=lhs, rhs=rhs)
    return Report("sum1", params, True)


def _recur2(m_max: int) -> Report:
    params = {"m_min": 0, "m_max": m_max}
    prev = _f_sum1(0)
    for m in range(m_max):
        nxt = _f_sum1(m + 1)
        rhs = Fraction(2 * m + 1, m + 1) * prev
        if nxt != rhs:
            return _fail("recur2", params, m=m, lhs=nxt, rhs=rhs)
        prev = nxt
    return Report("recur2", params, True)


def _newform_lhs(m: int) -> LaurentPoly:
    num = LaurentPoly({2 * m + 1: 1, -(2 * m + 1): 1})
    return num.exact_div(LaurentPoly({1: 1, -1: 1}))


def _newform2(m_max: int) -> Report:
    params = {"m_min": 0, "m_max": m_max}
    for m in range(m_max + 1):
        lhs = _newform_lhs(m)
        rhs = substitute_phi(t_poly(m))
        if lhs != rhs:
            return _fail("newform2", params, m=m, lhs=lhs, rhs=rhs)
    return Report("newform2", params, True)


def _rec22(m_max: int) -> Report:
    """c_{m+2} - (phi^2 + phi^-2) c_{m+1} + c_m = 0 on both sides of newform2."""
    params = {"m_min": 0, "m_max": m_max}
    mult = LaurentPoly({2: 1, -2: 1})
    sides = {
        "quotient": [_newform_lhs(m) for m in range(m_max + 1)],
        "t_poly": [substitute_phi(t_poly(m)) for m in range(m_max + 1)],
    }
    for side, c in sides.items():
        for m in range(m_max - 1):
            residual = c[m + 2] - mult * c[m + 1] + c[m]
            if not residual.is_zero():
                return _fail("rec22", params, side=side, m=m, residual=residual)
    return Report("rec22", params, True)


def _half_gamma_over_sqrt_pi(n: int) -> Fraction:
    """Gamma(n + 1/2) / sqrt(pi) = (2n)! / (4^n n!)."""
    return Fraction(factorial(2 * n), 4**n * factorial(n))


def _wallis_moment(m_max: int) -> Report:
    """int_0^oo t^{2k} (1+t^2)^{-(m+1)} dt divided by pi.

    Left side from the Beta integral B(k+1/2, m-k+1/2)/2; right side from the
    binomial closed form.
    """
    params = {"m_min": 0, "m_max": m_max}
    for m in range(m_max + 1):
        for k in range(m + 1):
            lhs = _half_gamma_over_sqrt_pi(k) * _half_gamma_over_sqrt_pi(m - k) / (2 * factorial(m))
            rhs = Fraction(comb(2 * k, k) * comb(2 * m - 2 * k, m - k), 2 ** (2 * m + 1) * comb(m, k))
            if lhs != rhs:
                return _fail("wallis_moment", params, m=m, k=k, lhs=lhs, rhs=rhs)
    return Report("wallis_moment", params, True)


def _binom_product(m_max: int) -> Report:
    params = {"m_min": 0, "m_max": m_max}
    for m in range(m_max + 1):
        for k in range(m + 1):
            lhs = comb(m + k, m - k) * comb(2 * k, k)
            rhs = comb(m + k, m) * comb(m, k)
            if lhs != rhs:
                return _fail("binom_product", params, m=m, k=k, lhs=lhs, rhs=rhs)
    return Report("binom_product", params, True)


def _pretty(m_max: int) -> Report:
    params = {"m_min": 0, "m_max": m_max}
    for m in range(m_max + 1):
        lhs = Fraction(sum((comb(2 * k, k) * comb(2 * m + 1, 2 * k)) << (2 * (m - k)) for k in range(m + 1)), 4**m)
        rhs = Fraction(sum((comb(2 * k, k) * comb(2 * m - k, m)) << (2 * (m - k)) for k in range(m + 1)), 4**m)
        if lhs != rhs:
            return _fail("pretty", params, m=m, lhs=lhs, rhs=rhs)
    return Report("pretty", params, True)


def _s1_closed(m_max: int) -> Report:
    params = {"m_min": 0, "m_max": m_max}
    for m in range(m_max + 1):
        lhs = sum(comb(2 * m + 1, 2 * j) * comb(2 * j, j) * 2 ** (2 * m + 1 - 2 * j) for j in range(m + 1))
        rhs = comb(4 * m + 2, 2 * m + 1)
        if lhs != rhs:
            return _fail("s1_closed", params, m=m, lhs=lhs, rhs=rhs)
    return Report("s1_closed", params, True)


def _closed_dmm(m_max: int) -> Report:
    """d_{m,m} = 2^-m C(2m,m) and d_{m-1,m} = (2m+1) 2^-(m+1) C(2m,m)."""
    params = {"m_min": 0, "m_max": m_max}
    for m in range(m_max + 1):
        row = d_row(m)
        rhs = Fraction(comb(2 * m, m), 2**m)
        if row[m] != rhs:
            return _fail("closed_dmm", params, m=m, which="d_mm", lhs=row[m], rhs=rhs)
        if m >= 1:
            rhs = Fraction((2 * m + 1) * comb(2 * m, m), 2 ** (m + 1))
            if row[m - 1] != rhs:
                return _fail("closed_dmm", params, m=m, which="d_m-1_m", lhs=row[m - 1], rhs=rhs)
    return Report("closed_dmm", params, True)


def _kp_rec1(m_max: int, d: Optional[_DRows] = None) -> Report:
    """2(m+1) d_{l,m+1} = 2(l+m) d_{l-1,m} + (2l+4m+3) d_{l,m}, 0 <= l <= m+1."""
    d = d or _DRows()
    params = {"m_min": 0, "m_max": m_max}
    for m in range(m_max + 1):
        for l in range(m + 2):
            lhs = 2 * (m + 1) * d(l, m + 1)
            rhs = 2 * (l + m) * d(l - 1, m) + (2 * l + 4 * m + 3) * d(l, m)
            if lhs != rhs:
                return _fail("kp_rec1", params, l=l, m=m, lhs=lhs, rhs=rhs)
    return Report("kp_rec1", params, True)


def _kp_rec2(m_max: int, d: Optional[_DRows] = None) -> Report:
    """4l(l+1) d_{l+1,m} = -2(2l-4m-3)(l+m+1) d_{l,m} + 4(l-m-1)(m+1) d_{l,m+1}."""
    d = d or _DRows()
    params = {"m_min": 0, "m_max": m_max}
    for m in range(m_max + 1):
        for l in range(m + 1):
            lhs = 4 * l * (l + 1) * d(l + 1, m)
            rhs = -2 * (2 * l - 4 * m - 3) * (l + m + 1) * d(l, m) + 4 * (l - m - 1) * (m + 1) * d(l, m + 1)
            if lhs != rhs:
                return _fail("kp_rec2", params, l=l, m=m, lhs=lhs, rhs=rhs)
    return Report("kp_rec2", params, True)


def _dj_rec(m_max: int, d: Optional[_DRows] = None) -> Report:
    """d_{j+1} = (2m+1)/(j+1) d_j - (m+j)(m+1-j)/(j(j+1)) d_{j-1} along row m."""
    d = d or _DRows()
    params = {"m_min": 2, "m_max": m_max}
    for m in range(2, m_max + 1):
        for j in range(1, m):
            lhs = d(j + 1, m)
            rhs = Fraction(2 * m + 1, j + 1) * d(j, m) - Fraction((m + j) * (m + 1 - j), j * (j + 1)) * d(j - 1, m)
            if lhs != rhs:
                return _fail("dj_rec", params, j=j, m=m, lhs=lhs, rhs=rhs)
    return Report("dj_rec", params, True)


def minexpr_values(m: int) -> list:
    """E(j) = (m+j)(m+1-j) d_{j-1}^2 + j(j+1) d_j^2 - j(2m+1) d_{j-1} d_j for j = 1..m."""
    row = d_row(m)
    out = []
    for j in range(1, m + 1):
        a, b = row[j - 1], row[j]
        out.append((m + j) * (m + 1 - j) * a * a + j * (j + 1) * b * b - j * (2 * m + 1) * a * b)
    return out


def _minexpr(m_max: int) -> Report:
    """Probe: is min_j E(j) attained at j = m? Records the minimum exactly.

    ``details`` also records, per m, whether the minimum equals
    2^{2m} m(m+1) C(2m,m)^2 or 2^{-2m} m(m+1) C(2m,m)^2; neither is asserted.
    """
    params = {"m_min": 1, "m_max": m_max}
    minima = {}
    for m in range(1, m_max + 1):
        vals = minexpr_values(m)
        best = min(vals)
        j_min = vals.index(best) + 1
        base = m * (m + 1) * comb(2 * m, m) ** 2
        minima[m] = {
            "j_min": j_min,
            "value": _jsonable(best),
            "equals_pow2_plus": best == base * 4**m,
            "equals_pow2_minus": best == Fraction(base, 4**m),
        }
        if j_min != m:
            return Report("minexpr", params, False, witness={"m": m, **minima[m]}, details={"minima": minima})
    return Report("minexpr", params, True, details={"minima": minima})


IDENTITIES: Dict[str, Callable[[int], Report]] = {
    "sum1": _sum1,
    "recur2": _recur2,
    "rec22": _rec22,
    "newform2": _newform2,
    "wallis_moment": _wallis_moment,
    "binom_product": _binom_product,
    "pretty": _pretty,
    "s1_closed": _s1_closed,
    "closed_dmm": _closed_dmm,
    "kp_rec1": _kp_rec1,
    "kp_rec2": _kp_rec2,
    "dj_rec": _dj_rec,
    "minexpr": _minexpr,
}

# sweep bounds used by the acceptance suite and as CLI defaults
DEFAULT_RANGES: Dict[str, int] = {
    "sum1": 1000,
    "recur2": 1000,
    "rec22": 100,
    "newform2": 100,
    "wallis_moment": 100,
    "binom_product": 200,
    "pretty": 300,
    "s1_closed": 300,
    "closed_dmm": 100,
    "kp_rec1": 100,
    "kp_rec2": 100,
    "dj_rec": 100,
    "minexpr": 40,
}


def check_identity(name: str, m_max: Optional[int] = None) -> Report:
    """Run one registry entry over 0..m_max (its default bound when omitted)."""
    try:
        checker = IDENTITIES[name]
    except KeyError:
        raise ValueError(f"unknown identity {name!r}; known: {', '.join(IDENTITIES)}") from None
    if m_max is None:
        m_max = DEFAULT_RANGES[name]
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    return checker(m_max)
