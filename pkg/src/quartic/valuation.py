"""2-adic and p-adic valuations of A_{l,m} = l! m! 2^{m+l} d_{l,m}.

Valuation data comes from one of two sources:

``direct``
    exact integers A_{l,m}, either from the single sum (:func:`quartic.core.a_row`)
    or, for long runs in m, from the integer recurrence
    ``A_{l,m+1} = (2l+4m+3) A_{l,m} + 4l(l+m) A_{l-1,m}``;
``formula``
    ``nu_2(A_{l,m}) = nu_2((m+1-l)_{2l}) + l``, evaluated through binary digit
    sums so that windows of tens of thousands of terms stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Optional

import numpy as np

from .alphabeta import alpha_value, beta_value
from .core import a_row
from .report import Report
from .kernel import is_small_prime, nu2_factorial, nu_int, pochhammer

__all__ = [
    "ValuationSeries",
    "BlockReport",
    "ReductionTrace",
    "WindowExhausted",
    "a_number",
    "b_number",
    "b_row",
    "b_recurrence_check",
    "nu2_a",
    "a_column_kp",
    "nu2_kp_table",
    "x_sequence",
    "block_structure",
    "simple_block_size",
    "reduce_sequence",
    "composition",
    "nup_series",
    "least_squares_slope",
]


class WindowExhausted(RuntimeError):
    """The finite window was too short to decide a constancy test."""


@dataclass
class ValuationSeries:
    """nu_p values at consecutive indices start_m, start_m + 1, ...

    ``errors`` is the exact residual nu_p - m/(p-1) when computed.
    """

    p: int
    l: int
    start_m: int
    values: list
    errors: Optional[list] = None
    index_name: str = "m"

    def indices(self) -> range:
        return range(self.start_m, self.start_m + len(self.values))


def _check_lm(l: int, m: int) -> None:
    if l < 0 or m < 0 or l > m:
        raise ValueError(f"need 0 <= l <= m, got l={l}, m={m}")


def _prod_4k(m: int, sign: int) -> int:
    out = 1
    for k in range(1, m + 1):
        out *= 4 * k + sign
    return out


def a_number(l: int, m: int, verify: bool = True) -> int:
    """A_{l,m} from the scaled single sum; with ``verify`` also via alpha/beta."""
    _check_lm(l, m)
    total = 0
    for k in range(l, m + 1):
        total += (
            comb(2 * m - 2 * k, m - k) * comb(m + k, k) * comb(k, l)
        ) << k
    num = factorial(l) * factorial(m) * total
    value, rem = divmod(num, 1 << (m - l))
    if rem:
        raise ArithmeticError(f"A_{{{l},{m}}} is not an integer")
    if verify:
        other = alpha_value(l, m) * _prod_4k(m, -1) - beta_value(l, m) * _prod_4k(m, 1)
        if other != value:
            raise ArithmeticError(f"A_{{{l},{m}}}: single sum {value} != alpha/beta form {other}")
    return value


def b_number(l: int, m: int) -> int:
    """B_{l,m} = A_{l,m} / (2^l (m+1-l)_{2l}); raises if it is not an odd integer."""
    if l < 1:
        raise ValueError("B_{l,m} needs l >= 1")
    _check_lm(l, m)
    return _b_from_a(l, m, a_number(l, m, verify=False))


def _b_from_a(l: int, m: int, a: int) -> int:
    den = pochhammer(m + 1 - l, 2 * l) << l
    q, r = divmod(a, den)
    if r:
        raise ArithmeticError(f"B_{{{l},{m}}} is not an integer")
    if q % 2 == 0:
        raise ArithmeticError(f"B_{{{l},{m}}} = {q} is even")
    return q


def b_row(m: int) -> list:
    """[B_{1,m}, ..., B_{m,m}], each checked to be an odd integer."""
    row = a_row(m)
    return [_b_from_a(l, m, row[l]) for l in range(1, m + 1)]


def b_recurrence_check(m_max: int) -> Report:
    """B_{l-1,m} = (2m+1) B_{l,m} - (m-l)(m+l+1) B_{l+1,m} for 1 <= l <= m-1.

    B_{0,m} is A_{0,m} itself (empty Pochhammer symbol).
    """
    for m in range(2, m_max + 1):
        row = a_row(m)
        b = [row[0]] + [_b_from_a(l, m, row[l]) for l in range(1, m + 1)]
        for l in range(1, m):
            rhs = (2 * m + 1) * b[l] - (m - l) * (m + l + 1) * b[l + 1]
            if rhs != b[l - 1]:
                return Report("b_recurrence", {"m_max": m_max}, False, witness={"l": l, "m": m})
    return Report("b_recurrence", {"m_max": m_max}, True)


def nu2_a(l: int, m: int, method: str = "formula") -> int:
    """nu_2(A_{l,m}) by factoring A (``direct``) or by the Pochhammer formula."""
    _check_lm(l, m)
    if method == "direct":
        return nu_int(2, a_number(l, m, verify=False))
    if method == "formula":
        return nu2_factorial(m + l) - nu2_factorial(m - l) + l
    raise ValueError(f"unknown method {method!r}")


def a_column_kp(l_max: int, m_max: int, bits: Optional[int] = None):
    """Yield (m, [A_{0,m}, ..., A_{min(l_max,m),m}]) for m = 0..m_max.

    With ``bits`` every entry is reduced mod 2^bits, which keeps the recurrence
    exact modulo that power.
    """
    mask = (1 << bits) - 1 if bits else -1
    col = [1]
    yield 0, list(col)
    for m in range(m_max):
        top = min(l_max, m + 1)
        new = [0] * (top + 1)
        for l in range(top + 1):
            cur = col[l] if l < len(col) else 0
            prev = col[l - 1] if 0 < l <= len(col) else 0
            new[l] = ((2 * l + 4 * m + 3) * cur + 4 * l * (l + m) * prev) & mask
        col = new
        yield m + 1, list(col)


@lru_cache(maxsize=8)
def nu2_kp_table(l_max: int, m_max: int) -> np.ndarray:
    """nu_2(A_{l,m}) from the recurrence; entries with l > m are -1.

    The recurrence runs mod 2^K. A nonzero residue pins the valuation exactly,
    and K doubles if any residue vanishes.
    """
    bits = 64
    while True:
        out = np.full((l_max + 1, m_max + 1), -1, dtype=np.int64)
        for m, col in a_column_kp(l_max, m_max, bits):
            for l, a in enumerate(col):
                if a == 0:
                    break
                out[l, m] = (a & -a).bit_length() - 1
            else:
                continue
            break
        else:
            return out
        bits *= 2


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a.astype(np.uint64)).astype(np.int64)


def x_sequence(l: int, count: int, source: str = "formula") -> np.ndarray:
    """X(l) = (nu_2(A_{l,l+i-1}) for i = 1..count)."""
    if l < 1 or count < 1:
        raise ValueError("need l >= 1 and count >= 1")
    if source == "formula":
        i = np.arange(count, dtype=np.int64)  # i - 1
        return 3 * l - _popcount(i + 2 * l) + _popcount(i)
    if source == "direct":
        m_max = l + count - 1
        table = nu2_kp_table(*_round_up(l, m_max))
        return table[l, l : l + count].copy()
    raise ValueError(f"unknown source {source!r}")


def _round_up(l: int, m_max: int) -> tuple:
    lm = 16
    while lm < l:
        lm *= 2
    mm = 256
    while mm < m_max:
        mm *= 2
    return lm, mm


def _blocks_constant(seq: np.ndarray, s: int) -> Optional[bool]:
    """Whether seq is constant on consecutive blocks of length s; None if < 2 blocks."""
    nblocks = len(seq) // s
    if nblocks < 2:
        return None
    b = seq[: nblocks * s].reshape(nblocks, s)
    return bool(np.all(b == b[:, :1]))


def simple_block_size(seq: np.ndarray, min_blocks: int = 4) -> int:
    """Largest power-of-two block length on which seq is constant.

    A constancy verdict needs at least ``min_blocks`` complete blocks; a
    nonconstant block is decisive immediately.
    """
    n = 0
    while True:
        s = 1 << (n + 1)
        nblocks = len(seq) // s
        if nblocks < 2:
            raise WindowExhausted(f"window of {len(seq)} cannot test block length {s}")
        if not _blocks_constant(seq, s):
            return n
        if nblocks < min_blocks:
            raise WindowExhausted(f"window of {len(seq)} too short to confirm block length {s}")
        n += 1


@dataclass
class BlockReport:
    l: int
    predicted_s: int
    verified_window: int
    is_s_simple_on_window: bool
    refuted_larger_s: bool
    source: str = "formula"

    @property
    def passed(self) -> bool:
        return self.is_s_simple_on_window and self.refuted_larger_s


def block_structure(l: int, window: Optional[int] = None, source: str = "formula") -> BlockReport:
    """Check X(l) is constant on blocks of s = 2^{1+nu_2(l)} and on no longer block."""
    if l < 1:
        raise ValueError("l must be >= 1")
    s = 2 << nu_int(2, l)
    if window is None:
        window = 256 * s
    if window < 4 * s:
        raise ValueError(f"window must be at least 4s = {4 * s}")
    seq = x_sequence(l, window, source)
    constant = bool(_blocks_constant(seq, s))
    refuted = all(_blocks_constant(seq, t) is False for t in range(s + 1, 2 * s + 1))
    return BlockReport(l, s, window, constant, refuted, source)


@dataclass
class ReductionTrace:
    """Outcome of the F/T/c reduction: omega = (n_1, n_2, ...)."""

    l: int
    omega: list
    cycles: list = field(default_factory=list)
    window: int = 0
    source: str = "formula"

    @property
    def length(self) -> int:
        return len(self.omega)


_SNAPSHOT = 16
_MAX_CYCLES = 64


def _reduce_once(x: np.ndarray, min_entries: int) -> tuple:
    omega, cycles = [], []
    seq = x
    for _ in range(_MAX_CYCLES):
        cycles.append([int(v) for v in seq[:_SNAPSHOT]])
        n = simple_block_size(seq)
        if n == 0:
            raise ArithmeticError("sequence has no block structure; reduction cannot proceed")
        omega.append(n)
        y = seq[:: 1 << n]
        c = _popcount(np.arange(1, len(y) + 1, dtype=np.int64) ^ np.arange(0, len(y), dtype=np.int64)) - 1
        z = y - c
        w = np.concatenate((z[:1], z))
        if len(w) < min_entries:
            raise WindowExhausted(f"only {len(w)} entries left after cycle {len(omega)}")
        if np.all(w == w[0]):
            cycles.append([int(v) for v in w[:_SNAPSHOT]])
            return omega, cycles
        seq = w
    raise ArithmeticError(f"no constant sequence after {_MAX_CYCLES} cycles")


def reduce_sequence(
    l: int,
    window: Optional[int] = None,
    source: str = "formula",
    min_entries: int = 8,
    confirm: bool = True,
    max_window: int = 1 << 22,
) -> ReductionTrace:
    """Run the drop-duplicates / subtract nu_2(m) / repeat-first cycle on X(l).

    The window starts at ``window`` (default 16 * 2^bitlength(l), since the
    digit sums driving X(l) only repeat on that scale) and doubles whenever a
    test is undecided. With ``confirm`` the result is recomputed on twice the
    accepted window, and the window keeps doubling until two runs agree.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    w = window or max(64, 16 << l.bit_length())
    omega, cycles, w = _reduce_auto(l, w, source, min_entries, max_window)
    while confirm:
        omega2, cycles2, w2 = _reduce_auto(l, 2 * w, source, min_entries, max_window)
        if omega2 == omega:
            break
        omega, cycles, w = omega2, cycles2, w2
    return ReductionTrace(l, omega, cycles, w, source)


def _reduce_auto(l, w, source, min_entries, max_window) -> tuple:
    while w <= max_window:
        try:
            omega, cycles = _reduce_once(x_sequence(l, w, source), min_entries)
            return omega, cycles, w
        except WindowExhausted:
            w *= 2
    raise WindowExhausted(f"l={l}: no decision within {max_window} terms")


def composition(l: int) -> list:
    """Gaps between successive 1-bits of l read from the right, the first counted inclusively."""
    if l < 1:
        raise ValueError("l must be >= 1")
    parts, run, t = [], 0, l
    while t:
        run += 1
        if t & 1:
            parts.append(run)
            run = 0
        t >>= 1
    return parts


def nup_series(p: int, l: int, m_max: int) -> ValuationSeries:
    """nu_p(A_{l,m}) for l <= m <= m_max with the exact residual nu_p - m/(p-1)."""
    if l < 0 or m_max < l:
        raise ValueError("need 0 <= l <= m_max")
    if not is_small_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        vals = [nu2_a(l, m) for m in range(l, m_max + 1)]
    else:
        vals = [nu_int(p, col[l]) for m, col in a_column_kp(l, m_max) if m >= l]
    errs = [Fraction(v) - Fraction(m, p - 1) for m, v in zip(range(l, m_max + 1), vals)]
    return ValuationSeries(p, l, l, vals, errs)


def least_squares_slope(series: ValuationSeries) -> float:
    x = np.asarray(series.indices(), dtype=float)
    y = np.asarray(series.values, dtype=float)
    return float(np.polyfit(x, y, 1)[0])
