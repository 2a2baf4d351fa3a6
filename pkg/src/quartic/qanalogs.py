"""Gaussian and quantum binomial coefficients and q-log-concavity probes.

Gaussian binomials are :class:`Poly` objects in q; quantum binomials are
:class:`LaurentPoly` objects since <n> = (q^n - q^-n)/(q - q^-1) has negative
powers. Each is built by exact division of its own factorials.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

from .poly import LaurentPoly, Poly
from .report import Report

__all__ = [
    "FAMILIES",
    "q_integer",
    "gaussian_binomial",
    "quantum_integer",
    "quantum_binomial",
    "gaussian_to_quantum",
    "is_nonnegative",
    "q_l_operator",
    "gaussian_depth2_witness",
    "family_sequence",
    "quantum_conjecture_probe",
    "lowest_term",
    "diagonal_lowest_degree",
]

FAMILIES = ("row", "column", "diagonal")


def q_integer(n: int) -> Poly:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    return Poly([1] * n)


@lru_cache(maxsize=None)
def _q_factorial(n: int) -> Poly:
    out = Poly((1,))
    for i in range(1, n + 1):
        out = out * q_integer(i)
    return out


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int) -> Poly:
    """[n choose k]_q; the zero polynomial when k is outside 0..n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return Poly()
    return _q_factorial(n).exact_div(_q_factorial(k) * _q_factorial(n - k))


def quantum_integer(n: int) -> LaurentPoly:
    """<n> = q^(1-n) (1 + q^2 + ... + q^(2n-2))."""
    return LaurentPoly({2 * i - (n - 1): 1 for i in range(n)})


@lru_cache(maxsize=None)
def _quantum_factorial(n: int) -> LaurentPoly:
    out = LaurentPoly({0: 1})
    for i in range(1, n + 1):
        out = out * quantum_integer(i)
    return out


@lru_cache(maxsize=None)
def quantum_binomial(n: int, k: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return LaurentPoly()
    return _quantum_factorial(n).exact_div(_quantum_factorial(k) * _quantum_factorial(n - k))


def gaussian_to_quantum(n: int, k: int) -> LaurentPoly:
    """q^-(nk - k^2) [n choose k]_{q^2}, the route through Gaussian binomials."""
    g = LaurentPoly.from_poly(gaussian_binomial(n, k))
    return g.scale_exponents(2).shift(-(n * k - k * k))


def is_nonnegative(f) -> bool:
    if isinstance(f, LaurentPoly):
        return f.has_nonnegative_coeffs()
    return all(c >= 0 for c in f.coeffs)


def _zero_like(f):
    return LaurentPoly() if isinstance(f, LaurentPoly) else Poly()


def q_l_operator(fs: Sequence) -> tuple:
    """(f_k^2 - f_{k-1} f_{k+1} for each k, nonnegativity flag for each), zero-padded."""
    if not fs:
        return [], []
    zero = _zero_like(fs[0])
    n = len(fs)
    out = []
    for k, f in enumerate(fs):
        left = fs[k - 1] if k > 0 else zero
        right = fs[k + 1] if k + 1 < n else zero
        out.append(f * f - left * right)
    return out, [is_nonnegative(g) for g in out]


def _first_negative(f) -> Optional[tuple]:
    items = f.items() if isinstance(f, LaurentPoly) else enumerate(f.coeffs)
    for e, c in sorted(items):
        if c < 0:
            return e, c
    return None


def gaussian_depth2_witness(n_max: int) -> Report:
    """Smallest (n, k, exponent) where L applied twice to a Gaussian row goes negative.

    The report passes when such a witness exists, since that is the expected outcome.
    """
    params = {"n_max": n_max}
    for n in range(n_max + 1):
        row = [gaussian_binomial(n, k) for k in range(n + 1)]
        once, _ = q_l_operator(row)
        twice, flags = q_l_operator(once)
        for k, ok in enumerate(flags):
            if not ok:
                e, c = _first_negative(twice[k])
                found = {"n": n, "k": k, "exponent": e, "coefficient": c}
                return Report("gaussian_depth2", params, True, witness=found, details=found)
    return Report("gaussian_depth2", params, False, witness={"result": f"no witness for n <= {n_max}"})


def family_sequence(family: str, n: int = 0, bound: int = 12, u: int = 0, v: int = 1) -> tuple:
    """(quantum binomials of the family, whether the right end is a truncation).

    row: <n choose k> for k = 0..n.
    column: <m choose n> for m = n..bound (here n plays the role of the fixed k).
    diagonal: <n + m u choose m v> for m = 0..bound.
    """
    if family == "row":
        return [quantum_binomial(n, k) for k in range(n + 1)], False
    if family == "column":
        if bound < n:
            raise ValueError("bound must be >= the fixed column index")
        return [quantum_binomial(m, n) for m in range(n, bound + 1)], True
    if family == "diagonal":
        if not 0 <= u < v:
            raise ValueError("the diagonal family needs 0 <= u < v; use diagonal_lowest_degree for u > v")
        return [quantum_binomial(n + m * u, m * v) for m in range(bound + 1)], True
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def quantum_conjecture_probe(
    family: str, n: int = 0, depth: int = 3, bound: int = 12, u: int = 0, v: int = 1
) -> Report:
    """Iterate the q-version of L on a quantum-binomial family; evidence only.

    For truncated families the last entry is dropped after every application,
    because its missing right neighbour is not really zero.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    seq, truncated = family_sequence(family, n, bound, u, v)
    params = {"family": family, "n": n, "depth": depth, "bound": bound}
    if family == "diagonal":
        params.update(u=u, v=v)
    for d in range(1, depth + 1):
        seq, flags = q_l_operator(seq)
        if truncated:
            seq, flags = seq[:-1], flags[:-1]
        for idx, ok in enumerate(flags):
            if not ok:
                e, c = _first_negative(seq[idx])
                return Report("quantum_probe", params, False, witness={"depth": d, "index": idx, "exponent": e, "coefficient": c})
        if not seq:
            break
    return Report("quantum_probe", params, True, details={"entries_checked": len(seq)})


def lowest_term(n: int, u: int, v: int) -> tuple:
    """(exponent, coefficient) of the lowest term of <n+u choose v>^2 - <n+2u choose 2v>."""
    if not u > v >= 1:
        raise ValueError("need u > v >= 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    diff = quantum_binomial(n + u, v) ** 2 - quantum_binomial(n + 2 * u, 2 * v)
    e = diff.min_exp
    return e, diff.coeff(e)


def diagonal_lowest_degree(n: int, u: int, v: int) -> int:
    """Coefficient of the lowest-degree term of <n+u choose v>^2 - <n+2u choose 2v>.

    The exponent itself is available from :func:`lowest_term`; the value
    returned here is the sign-carrying coefficient that rules out
    q-log-concavity when u > v.
    """
    return lowest_term(n, u, v)[1]
