"""Decision trees for nu_2(C_{l,m}) and the piecewise formulas they encode.

C_{l,m} is the block representative A_{l, l + s(m-1)} with s = 2^{1+nu_2(l)}:
one term from each constant block of X(l).

A vertex at level k with offset a stands for the subsequence
M = 2^k (m-1) + a, m >= 1. It is terminal when nu_2(C_{l,M}) - nu_2(m) does
not depend on m; otherwise it splits into offsets a and a + 2^k at level k+1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .kernel import nu2, nu2_factorial
from .report import Report
from .valuation import ValuationSeries, nu2_kp_table, _popcount, _round_up

__all__ = [
    "kstar",
    "Gammas",
    "gamma1",
    "gamma2",
    "gamma3",
    "gammas",
    "Case",
    "PiecewiseFormula",
    "piecewise_formula",
    "SPACINGS",
    "c_values",
    "c_series",
    "verify_piecewise",
    "TreeNode",
    "DecisionTree",
    "TreeIndecision",
    "build_tree",
    "tree_shape",
]


def kstar(l: int) -> int:
    if l < 1:
        raise ValueError("l must be >= 1")
    return l.bit_length() - 1


def _gamma(l: int, k: int, j: int, base: int) -> int:
    lo, hi = j + l - 1, l - j
    if lo < 0 or hi < 0:
        raise ValueError(f"factorial argument out of range: ({lo})!, ({hi})! for l={l}, k={k}")
    return l + k + base + nu2_factorial(lo) + nu2_factorial(hi)


def _j1(l: int, k: int, a: int) -> int:
    return -l + 2 * (1 + (1 << k) - a)


def _j2(l: int, k: int, a: int) -> int:
    return -l + 2 * (1 + (2 << k) - a)


def gamma1(l: int, k: int, a: int) -> int:
    return _gamma(l, k, _j1(l, k, a), 1)


def gamma2(l: int, k: int, a: int) -> int:
    return _gamma(l, k, _j2(l, k, a), 2)


def gamma3(l: int, k: int, a: int) -> int:
    return _gamma(l, k, _j2(l, k, a + (1 << k)), 2)


@dataclass(frozen=True)
class Gammas:
    j1: int
    j2: int
    j3: int
    gamma1: Optional[int]
    gamma2: Optional[int]
    gamma3: Optional[int]


def gammas(l: int, k: int, a: int) -> Gammas:
    """All three j and gamma values; a gamma is None where its factorials are undefined."""

    def safe(f):
        try:
            return f(l, k, a)
        except ValueError:
            return None

    return Gammas(
        _j1(l, k, a),
        _j2(l, k, a),
        _j2(l, k, a + (1 << k)),
        safe(gamma1),
        safe(gamma2),
        safe(gamma3),
    )


@dataclass(frozen=True)
class Case:
    """nu_2(C_{l,m}) = constant + nu_2((m + shift) / modulus) when m = residue mod modulus."""

    modulus: int
    residue: int
    constant: int
    shift: int

    def matches(self, m: int) -> bool:
        return (m - self.residue) % self.modulus == 0

    def evaluate(self, m: int) -> int:
        q, r = divmod(m + self.shift, self.modulus)
        if r:
            raise ValueError(f"m={m} is not in the class {self.residue} mod {self.modulus}")
        return self.constant + nu2(q)

    def as_tuple(self) -> tuple:
        return (self.modulus, self.residue, self.constant, self.shift)


@dataclass
class PiecewiseFormula:
    l: int
    cases: list

    def evaluate(self, m: int) -> int:
        for c in self.cases:
            if c.matches(m):
                return c.evaluate(m)
        raise ValueError(f"no case covers m={m}")

    def is_partition(self) -> bool:
        big = max(c.modulus for c in self.cases)
        hits = [sum(c.matches(r) for c in self.cases) for r in range(1, big + 1)]
        return all(h == 1 for h in hits)


def piecewise_formula(l: int) -> PiecewiseFormula:
    """Cases in the order: level-k* terminals, then the two level-(k*+1) families.

    Residues are the offsets a in 1..modulus, so the class m = 0 mod 16 is
    reported with residue 16.
    """
    k = kstar(l)
    lo_mod, hi_mod = 1 << k, 2 << k
    split_from = hi_mod - l + 1
    cases = [Case(lo_mod, a, gamma1(l, k, a), lo_mod - a) for a in range(1, split_from)]
    cases += [Case(hi_mod, a, gamma2(l, k, a), hi_mod - a) for a in range(split_from, lo_mod + 1)]
    cases += [Case(hi_mod, a + lo_mod, gamma3(l, k, a), lo_mod - a) for a in range(split_from, lo_mod + 1)]
    return PiecewiseFormula(l, cases)


SPACINGS = ("block", "pair")


def _step(l: int, spacing: str) -> int:
    if spacing == "block":
        return 2 << nu2(l)
    if spacing == "pair":
        return 2
    raise ValueError(f"unknown spacing {spacing!r}; expected one of {SPACINGS}")


def c_values(l: int, count: int, source: str = "formula", spacing: str = "block") -> np.ndarray:
    """nu_2(C_{l,m}) for m = 1..count as a numpy array.

    ``spacing="pair"`` samples A_{l, l + 2(m-1)} instead; the two agree for odd l.
    """
    if l < 1 or count < 1:
        raise ValueError("need l >= 1 and count >= 1")
    s = _step(l, spacing)
    off = s * np.arange(count, dtype=np.int64)  # n - l
    if source == "formula":
        return 3 * l - _popcount(off + 2 * l) + _popcount(off)
    if source == "direct":
        table = nu2_kp_table(*_round_up(l, l + int(off[-1])))
        return table[l, l + off].copy()
    raise ValueError(f"unknown source {source!r}")


def c_series(l: int, count: int, source: str = "formula", spacing: str = "block") -> ValuationSeries:
    vals = [int(v) for v in c_values(l, count, source, spacing)]
    return ValuationSeries(2, l, 1, vals)


def verify_piecewise(
    l: int, count: int = 256, source: str = "formula", spacing: str = "block"
) -> Report:
    formula = piecewise_formula(l)
    data = c_values(l, count, source, spacing)
    params = {"l": l, "count": count, "source": source, "spacing": spacing}
    for m in range(1, count + 1):
        want = formula.evaluate(m)
        if want != data[m - 1]:
            return Report("verify_piecewise", params, False, witness={"m": m, "formula": want, "data": int(data[m - 1])})
    return Report("verify_piecewise", params, True, details={"cases": len(formula.cases)})


class TreeIndecision(RuntimeError):
    """A vertex stayed nonterminal past the depth the theory allows."""


@dataclass
class TreeNode:
    level: int
    residue: int
    terminal: bool = False
    gamma: Optional[int] = None
    children: list = field(default_factory=list)

    def label(self) -> str:
        return f"2^{self.level}(m-1)+{self.residue}"

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass
class DecisionTree:
    l: int
    root: TreeNode
    probe: int
    spacing: str = "block"

    def nodes(self) -> list:
        return list(self.root.walk())

    def terminals(self) -> list:
        return [n for n in self.nodes() if n.terminal]

    def terminal_counts(self) -> dict:
        out = {}
        for n in self.terminals():
            out[n.level] = out.get(n.level, 0) + 1
        return dict(sorted(out.items()))

    def level_sizes(self) -> dict:
        out = {}
        for n in self.nodes():
            out[n.level] = out.get(n.level, 0) + 1
        return dict(sorted(out.items()))

    def shape_matches_theory(self) -> bool:
        k = kstar(self.l)
        sizes, terms = self.level_sizes(), self.terminal_counts()
        complete = all(sizes.get(i) == 1 << i for i in range(k + 1))
        expected = {k: (2 << k) - self.l}
        if self.l != 1 << k:
            expected[k + 1] = 2 * (self.l - (1 << k))
        return complete and terms == {i: c for i, c in expected.items() if c}


def build_tree(l: int, probe: int = 64, spacing: str = "block") -> DecisionTree:
    """Grow T(l) from data: a vertex is terminal when nu_2(C) - nu_2(m) is constant
    on ``probe`` consecutive terms of its subsequence."""
    k_max = kstar(l) + 1
    data = c_values(l, (2 << k_max) * probe, spacing=spacing)
    m = np.arange(1, probe + 1, dtype=np.int64)
    nu_m = _popcount(m ^ (m - 1)) - 1

    def grow(level: int, a: int) -> TreeNode:
        idx = (1 << level) * (m - 1) + a - 1
        diff = data[idx] - nu_m
        if np.all(diff == diff[0]):
            return TreeNode(level, a, True, int(diff[0]))
        if level >= k_max:
            raise TreeIndecision(f"l={l}: vertex {a} at level {level} is not terminal on {probe} terms")
        node = TreeNode(level, a)
        node.children = [grow(level + 1, a), grow(level + 1, a + (1 << level))]
        return node

    return DecisionTree(l, grow(0, 1), probe, spacing)


def tree_shape(tree: DecisionTree):
    """Nested tuples with labels dropped: a terminal is None, an inner vertex a pair."""

    def shape(node: TreeNode):
        if node.terminal:
            return None
        return tuple(shape(c) for c in node.children)

    return shape(tree.root)
