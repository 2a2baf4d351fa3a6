"""Exact integer and rational primitives.

Integers are plain Python ``int`` and rationals are :class:`fractions.Fraction`,
which is always stored in lowest terms with a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational

__all__ = [
    "Rat",
    "binomial",
    "pochhammer",
    "nu",
    "nu_int",
    "nu2",
    "s2",
    "nu2_factorial",
    "nu_factorial",
    "is_small_prime",
]

Rat = Fraction


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0, with C(n, k) = 0 when k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial: n must be nonnegative, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def pochhammer(a: int, k: int) -> int:
    """Rising factorial a(a+1)...(a+k-1); (a)_0 = 1."""
    if k < 0:
        raise ValueError(f"pochhammer: k must be nonnegative, got {k}")
    out = 1
    for i in range(k):
        out *= a + i
    return out


def is_small_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def nu_int(p: int, n: int) -> int:
    """Exponent of p in the nonzero integer n.

    Divides by p, p^2, p^4, ... so the number of big divisions is logarithmic
    in the answer rather than linear.
    """
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    if n % p:
        return 0
    v = 0
    powers = [p]
    while True:
        q, r = divmod(n, powers[-1])
        if r:
            break
        n = q
        v += 1 << (len(powers) - 1)
        powers.append(powers[-1] * powers[-1])
    for i in range(len(powers) - 2, -1, -1):
        q, r = divmod(n, powers[i])
        if not r:
            n = q
            v += 1 << i
    return v


def nu(p: int, x: int | Rational) -> int:
    """p-adic valuation of a nonzero integer or rational."""
    if not is_small_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is undefined")
    return nu_int(p, x.numerator) - nu_int(p, x.denominator)


def nu2(x: int | Rational) -> int:
    return nu(2, x)


def s2(n: int) -> int:
    """Number of ones in the binary expansion of n >= 0."""
    if n < 0:
        raise ValueError(f"s2: n must be nonnegative, got {n}")
    return bin(n).count("1")


def nu2_factorial(n: int) -> int:
    """nu_2(n!) by Legendre: n - s2(n)."""
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return n - s2(n)


def nu_factorial(p: int, n: int) -> int:
    """nu_p(n!) = (n - s_p(n)) / (p - 1)."""
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    digits, t = 0, n
    while t:
        t, r = divmod(t, p)
        digits += r
    return (n - digits) // (p - 1)
