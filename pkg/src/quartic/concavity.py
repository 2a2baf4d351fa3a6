"""Unimodality, log-concavity and the operator L(a)_j = a_j^2 - a_{j-1} a_{j+1}.

Sequences are plain lists of ints or Fractions; all tests are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .poly import Poly, is_real_rooted, taylor_shift
from .report import Report

__all__ = [
    "Classification",
    "l_operator",
    "is_unimodal",
    "is_log_concave",
    "log_concavity_witness",
    "classify",
    "inf_lc_probe",
    "r_factor_certify",
    "r_factor_depth",
    "shift_unimodal_check",
    "fisk_probe",
    "random_real_rooted",
    "newton_harness",
    "random_nondecreasing",
]


def l_operator(seq: Sequence) -> list:
    """One application of L; neighbours outside the sequence count as 0."""
    n = len(seq)
    out = []
    for j, a in enumerate(seq):
        left = seq[j - 1] if j > 0 else 0
        right = seq[j + 1] if j + 1 < n else 0
        out.append(a * a - left * right)
    return out


def is_unimodal(seq: Sequence) -> bool:
    j, n = 0, len(seq)
    while j + 1 < n and seq[j] <= seq[j + 1]:
        j += 1
    while j + 1 < n and seq[j] >= seq[j + 1]:
        j += 1
    return j >= n - 1


def log_concavity_witness(seq: Sequence) -> Optional[int]:
    """First interior j with a_{j-1} a_{j+1} > a_j^2, or None."""
    for j in range(1, len(seq) - 1):
        if seq[j - 1] * seq[j + 1] > seq[j] * seq[j]:
            return j
    return None


def is_log_concave(seq: Sequence) -> Optional[bool]:
    """None when some entry is negative (the notion needs a_j >= 0)."""
    if any(a < 0 for a in seq):
        return None
    return log_concavity_witness(seq) is None


@dataclass(frozen=True)
class Classification:
    unimodal: bool
    log_concave: Optional[bool]
    witness: Optional[int] = None


def classify(seq: Sequence) -> Classification:
    lc = is_log_concave(seq)
    return Classification(is_unimodal(seq), lc, log_concavity_witness(seq) if lc is False else None)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    return v


def inf_lc_probe(seq: Sequence, depth: int, label: str = "sequence") -> Report:
    """Apply L up to ``depth`` times; fail at the first negative entry.

    Passing is evidence only: it says nothing about depth + 1.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if any(a < 0 for a in seq):
        raise ValueError("inf_lc_probe needs a nonnegative sequence")
    cur = list(seq)
    params = {"input": label, "depth": depth}
    for d in range(1, depth + 1):
        cur = l_operator(cur)
        for j, b in enumerate(cur):
            if b < 0:
                return Report("inf_lc_probe", params, False, witness={"depth": d, "index": j, "value": _jsonable(b)})
    return Report("inf_lc_probe", params, True, details={"depth_reached": depth})


def _ge_r_times(a2, p) -> bool:
    """a2 >= r p with r = (3 + sqrt 5)/2, for p >= 0, decided in Q.

    Equivalent to 2 a2 - 3 p >= sqrt(5) p.
    """
    lhs = 2 * a2 - 3 * p
    if lhs < 0:
        return False
    return lhs * lhs >= 5 * p * p


def _r_factor_holds(seq: Sequence) -> bool:
    return all(_ge_r_times(seq[k] * seq[k], seq[k - 1] * seq[k + 1]) for k in range(1, len(seq) - 1))


def r_factor_depth(seq: Sequence, max_depth: int = 16) -> Optional[int]:
    """Smallest i <= max_depth with L^i(seq) positive and r-factor log-concave, else None."""
    if any(a <= 0 for a in seq):
        raise ValueError("r-factor certification needs positive entries")
    cur = list(seq)
    for i in range(max_depth + 1):
        if _r_factor_holds(cur):
            return i
        cur = l_operator(cur)
        if any(a <= 0 for a in cur):
            return None
    return None


def r_factor_certify(seq: Sequence, max_depth: int = 0) -> bool:
    """a_k^2 >= r a_{k-1} a_{k+1} at every interior k, r the golden mean squared.

    L preserves this condition, so it certifies infinite log-concavity. With
    ``max_depth`` > 0 the condition may instead hold for some positive iterate
    L^i(seq), i <= max_depth, which certifies the same conclusion.
    """
    return r_factor_depth(seq, max_depth) is not None


def shift_unimodal_check(seq: Sequence) -> tuple:
    """(is A(x+1) unimodal, its coefficients) for A with nondecreasing positive coefficients."""
    if not seq:
        raise ValueError("empty sequence")
    if any(a <= 0 for a in seq):
        raise ValueError("coefficients must be positive")
    if any(seq[i] > seq[i + 1] for i in range(len(seq) - 1)):
        raise ValueError("coefficients must be nondecreasing")
    shifted = taylor_shift(Poly(seq), 1)
    coeffs = list(shifted.coeffs)
    return is_unimodal(coeffs), coeffs


def fisk_probe(p: Poly) -> Report:
    """Is the polynomial with coefficients L(coeffs of p) real-rooted? Evidence only."""
    if p.degree < 1:
        raise ValueError("need a nonconstant polynomial")
    if any(c <= 0 for c in p.coeffs):
        raise ValueError("coefficients must be positive")
    if not is_real_rooted(p):
        raise ValueError("input polynomial is not real-rooted")
    image = Poly(l_operator(list(p.coeffs)))
    ok = image.degree < 1 or is_real_rooted(image)
    params = {"poly": str(p)}
    details = {"image": [_jsonable(c) for c in image.coeffs]}
    if not ok:
        return Report("fisk_probe", params, False, witness=details, details=details)
    return Report("fisk_probe", params, True, details=details)


def random_real_rooted(rng: random.Random, max_degree: int = 8, max_root: int = 20) -> Poly:
    """Product of (x + r) over random positive rationals r."""
    deg = rng.randint(1, max_degree)
    p = Poly((1,))
    for _ in range(deg):
        r = Fraction(rng.randint(1, max_root * 4), rng.randint(1, 4))
        p = p * Poly((r, 1))
    return p


def newton_harness(samples: int = 500, seed: int = 0, max_degree: int = 8) -> Report:
    """Random positive real-rooted polynomials must have log-concave coefficients."""
    rng = random.Random(seed)
    params = {"samples": samples, "seed": seed, "max_degree": max_degree}
    for i in range(samples):
        p = random_real_rooted(rng, max_degree)
        j = log_concavity_witness(list(p.coeffs))
        if j is not None:
            return Report("newton", params, False, witness={"sample": i, "poly": str(p), "index": j})
    return Report("newton", params, True)


def random_nondecreasing(rng: random.Random, max_len: int = 10, max_value: int = 50) -> list:
    n = rng.randint(1, max_len)
    return sorted(rng.randint(1, max_value) for _ in range(n))
