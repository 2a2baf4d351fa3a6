"""The polynomials alpha_l(m), beta_l(m) and their shifted forms A_l(s), B_l(s).

Both are built by multiplying out finite products of linear factors in ``m``, so
every coefficient is an exact integer. The critical-line certificate reduces the
question "all roots have real part -1/2" to a real-rootedness question that a
Sturm chain settles exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .kernel import binomial
from .poly import Poly, count_real_roots, is_real_rooted
from .report import Report

__all__ = [
    "AlphaBetaPair",
    "alpha_value",
    "beta_value",
    "alpha_beta",
    "shifted",
    "three_term_check",
    "critical_line_certify",
]


def _prod(lo: int, hi: int, f) -> int:
    out = 1
    for v in range(lo, hi + 1):
        out *= f(v)
    return out


def alpha_value(l: int, m: int) -> int:
    """alpha_l evaluated at an integer m, straight from the finite sum."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    total = 0
    for t in range(l // 2 + 1):
        total += (
            binomial(l, 2 * t)
            * _prod(m + 1, m + t, lambda v: 4 * v - 1)
            * _prod(m - l + 2 * t + 1, m, lambda v: 2 * v + 1)
            * _prod(1, t - 1, lambda v: 4 * v + 1)
        )
    return total


def beta_value(l: int, m: int) -> int:
    if l < 0:
        raise ValueError("l must be nonnegative")
    total = 0
    for t in range(1, (l + 1) // 2 + 1):
        total += (
            binomial(l, 2 * t - 1)
            * _prod(m + 1, m + t - 1, lambda v: 4 * v + 1)
            * _prod(m - l + 2 * t, m, lambda v: 2 * v + 1)
            * _prod(1, t - 1, lambda v: 4 * v - 1)
        )
    return total


def _linear_product(factors) -> Poly:
    p = Poly((1,))
    for c0, c1 in factors:
        p = p * Poly((c0, c1))
    return p


@dataclass(frozen=True)
class AlphaBetaPair:
    l: int
    alpha: Poly
    beta: Poly


@lru_cache(maxsize=None)
def alpha_beta(l: int) -> AlphaBetaPair:
    """alpha_l and beta_l as integer polynomials in m.

    A factor (4v - 1) with v = m + i is the linear polynomial 4m + (4i - 1), and
    (2v + 1) with v = m - i is -2i + 1 + 2m.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    alpha = Poly()
    for t in range(l // 2 + 1):
        const = binomial(l, 2 * t) * _prod(1, t - 1, lambda v: 4 * v + 1)
        up = [(4 * i - 1, 4) for i in range(1, t + 1)]
        down = [(1 - 2 * i, 2) for i in range(l - 2 * t)]
        alpha = alpha + _linear_product(up + down) * const
    beta = Poly()
    for t in range(1, (l + 1) // 2 + 1):
        const = binomial(l, 2 * t - 1) * _prod(1, t - 1, lambda v: 4 * v - 1)
        up = [(4 * i + 1, 4) for i in range(1, t)]
        down = [(1 - 2 * i, 2) for i in range(l - 2 * t + 1)]
        beta = beta + _linear_product(up + down) * const
    return AlphaBetaPair(l, alpha, beta)


_HALF_SHIFT = Poly((Fraction(-1, 2), Fraction(1, 2)))


def shifted(l: int, family: str = "alpha") -> Poly:
    """A_l(s) = alpha_l((s-1)/2) or B_l(s) = beta_l((s-1)/2)."""
    if family not in ("alpha", "beta"):
        raise ValueError(f"unknown family {family!r}")
    pair = alpha_beta(l)
    p = pair.alpha if family == "alpha" else pair.beta
    return p.compose(_HALF_SHIFT)


def three_term_check(l_max: int, family: str = "alpha") -> Report:
    """x_{l+1} = 2s x_l - (s^2 - (2l-1)^2) x_{l-1} for 1 <= l <= l_max - 1."""
    s = Poly((0, 1))
    xs = [shifted(l, family) for l in range(l_max + 1)]
    for l in range(1, l_max):
        rhs = xs[l] * s * 2 - (s * s - (2 * l - 1) ** 2) * xs[l - 1]
        if rhs != xs[l + 1]:
            return Report(
                f"three_term_{family}",
                {"l_max": l_max},
                False,
                witness={"l": l, "lhs": str(xs[l + 1]), "rhs": str(rhs)},
            )
    return Report(f"three_term_{family}", {"l_max": l_max}, True)


def _parity(p: Poly) -> int:
    """+1 if p is even, -1 if odd, 0 if neither."""
    if all(c == 0 for c in p.coeffs[1::2]):
        return 1
    if all(c == 0 for c in p.coeffs[0::2]):
        return -1
    return 0


def critical_line_certify(l: int, family: str = "alpha") -> bool:
    """Exact check that every root of alpha_l (or beta_l) has real part -1/2.

    With s = 2m + 1 the line becomes Re s = 0. A_l is even or odd in s; after
    removing a factor s in the odd case the result is R(s^2), and the roots lie
    on the imaginary axis iff R(-u) is real-rooted with all roots u >= 0.
    """
    if family == "alpha" and l < 1 or family == "beta" and l < 2:
        raise ValueError(f"critical line statement needs l >= {1 if family == 'alpha' else 2}")
    p = shifted(l, family)
    par = _parity(p)
    if par == 0:
        return False
    if par == -1:
        p = Poly(p.coeffs[1:])
    r_of_u = Poly(c * (-1) ** i for i, c in enumerate(p.coeffs[0::2]))
    if r_of_u.degree < 1:
        return not r_of_u.is_zero()
    while r_of_u[0] == 0:
        r_of_u = Poly(r_of_u.coeffs[1:])
    if r_of_u.degree < 1:
        return True
    if not is_real_rooted(r_of_u):
        return False
    return count_real_roots(r_of_u, hi=0) == 0
