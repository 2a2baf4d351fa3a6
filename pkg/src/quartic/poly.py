"""Exact univariate polynomials.

:class:`Poly` is dense (coefficient of ``x**i`` at index ``i``); :class:`LaurentPoly`
is a sparse exponent -> coefficient map allowing negative exponents. Coefficients
are ``int`` or :class:`fractions.Fraction`; integer inputs stay integers under
ring operations and only division promotes to ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from math import gcd, lcm
from typing import Iterable, Mapping, Optional, Sequence, Union

Number = Union[int, Fraction]

__all__ = [
    "Poly",
    "LaurentPoly",
    "X",
    "taylor_shift",
    "poly_gcd",
    "squarefree_part",
    "sturm_chain",
    "count_real_roots",
    "is_real_rooted",
    "substitute_phi",
]


def _trim(coeffs: Iterable[Number]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    """Dense polynomial in one variable with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c: Number = 1) -> "Poly":
        return cls((0,) * n + (c,))

    @classmethod
    def from_roots(cls, roots: Iterable[Number], lead: Number = 1) -> "Poly":
        p = cls((lead,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Number:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return " + ".join(terms)

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        return Poly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-a for a in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(a * other for a in self.coeffs)
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(x))."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def __divmod__(self, other: "Poly"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if all(type(c) is int for c in self.coeffs) and all(type(c) is int for c in other.coeffs):
            fast = _int_divmod(list(self.coeffs), other.coeffs)
            if fast is not None:
                return Poly(fast[0]), Poly(fast[1])
        rem = [Fraction(c) for c in self.coeffs]
        dlead = Fraction(other.lead)
        dd = other.degree
        if len(rem) - 1 < dd:
            return Poly(), Poly(rem)
        quot = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i] / dlead
            if c == 0:
                continue
            quot[i - dd] = c
            for j, b in enumerate(other.coeffs):
                rem[i - dd + j] -= c * b
        return Poly(_normalize(quot)), Poly(_normalize(rem[:dd]))

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{self!r} is not divisible by {other!r}")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = Fraction(self.lead)
        return Poly(_normalize(Fraction(c) / lc for c in self.coeffs))

    def primitive(self) -> "Poly":
        """Positive rational multiple with coprime integer coefficients."""
        if self.is_zero():
            return self
        fr = [Fraction(c) for c in self.coeffs]
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in fr]
        g = 0
        for c in ints:
            g = gcd(g, c)
        return Poly(c // g for c in ints)

    def shift_var(self, j: Number) -> "Poly":
        return taylor_shift(self, j)


X = Poly((0, 1))


def _int_divmod(rem: list, div: tuple) -> Optional[tuple]:
    """Integer long division; None as soon as a quotient coefficient is not integral."""
    dd = len(div) - 1
    lead = div[-1]
    if len(rem) - 1 < dd:
        return [], rem
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        if rem[i] == 0:
            continue
        c, r = divmod(rem[i], lead)
        if r:
            return None
        quot[i - dd] = c
        for j, b in enumerate(div):
            rem[i - dd + j] -= c * b
    return quot, rem[:dd]


def _normalize(values: Iterable[Fraction]) -> list:
    """Turn integral fractions back into ints so integer polynomials compare cleanly."""
    return [int(v) if isinstance(v, Fraction) and v.denominator == 1 else v for v in values]


def taylor_shift(p: Poly, j: Number) -> Poly:
    """Return Q with Q(x) = P(x + j), by repeated synthetic division."""
    c = list(p.coeffs)
    n = len(c)
    if j == 0 or n < 2:
        return Poly(c)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            c[k] += j * c[k + 1]
    return Poly(c)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    if p.degree < 1:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).primitive()


def sturm_chain(p: Poly) -> list:
    """Sturm sequence of p, each member rescaled by a positive constant."""
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [p.primitive() if p.lead > 0 else -((-p).primitive())]
    nxt = p.derivative()
    if nxt.is_zero():
        return chain
    chain.append(nxt.primitive() if nxt.lead > 0 else -((-nxt).primitive()))
    while True:
        r = -(chain[-2] % chain[-1])
        if r.is_zero():
            return chain
        chain.append(r.primitive() if r.lead > 0 else -((-r).primitive()))


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _variations(signs: Iterable[int]) -> int:
    prev, count = 0, 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _variations_at(chain: Sequence[Poly], x: Optional[Number], at_minus_inf: bool = False) -> int:
    if x is None:
        if at_minus_inf:
            return _variations(_sign(q.lead) * (-1 if q.degree % 2 else 1) for q in chain)
        return _variations(_sign(q.lead) for q in chain)
    x = Fraction(x)
    return _variations(_sign(q(x)) for q in chain)


def count_real_roots(p: Poly, lo: Optional[Number] = None, hi: Optional[Number] = None) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi].

    ``lo=None`` means -infinity and ``hi=None`` means +infinity.
    """
    if p.is_zero():
        raise ValueError("root count of the zero polynomial")
    if p.degree < 1:
        return 0
    if lo is not None and hi is not None and Fraction(lo) >= Fraction(hi):
        return 0
    chain = sturm_chain(squarefree_part(p))
    return _variations_at(chain, lo, at_minus_inf=True) - _variations_at(chain, hi)


def is_real_rooted(p: Poly) -> bool:
    """True iff every complex root of p is real (decided exactly)."""
    if p.is_zero():
        raise ValueError("real-rootedness of the zero polynomial is undefined")
    sf = squarefree_part(p)
    return count_real_roots(sf) == sf.degree


class LaurentPoly:
    """Sparse Laurent polynomial: exponent -> nonzero coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[int, Number]] = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def from_poly(cls, p: Poly, shift: int = 0) -> "LaurentPoly":
        return cls({i + shift: c for i, c in enumerate(p.coeffs)})

    @classmethod
    def monomial(cls, e: int, c: Number = 1) -> "LaurentPoly":
        return cls({e: c})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero Laurent polynomial has no exponents")
        return min(self.terms)

    @property
    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero Laurent polynomial has no exponents")
        return max(self.terms)

    def coeff(self, e: int) -> Number:
        return self.terms.get(e, 0)

    def items(self) -> list:
        return sorted(self.terms.items())

    def to_poly(self) -> tuple:
        """(Poly, shift) with self = x**shift * Poly."""
        if not self.terms:
            return Poly(), 0
        lo = self.min_exp
        out = [0] * (self.max_exp - lo + 1)
        for e, c in self.terms.items():
            out[e - lo] = c
        return Poly(out), lo

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPoly({0: other}).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self.items())!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*q^{e}" for e, c in reversed(self.items()))

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({0: other})
        if isinstance(other, Poly):
            return LaurentPoly.from_poly(other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power")
        result, base = LaurentPoly({0: 1}), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient self / other, which must be exact."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("Laurent division by zero")
        if self.is_zero():
            return LaurentPoly()
        num, s1 = self.to_poly()
        den, s2_ = other.to_poly()
        q = num.exact_div(den)
        return LaurentPoly.from_poly(q, s1 - s2_)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q**k."""
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def invert(self) -> "LaurentPoly":
        """Substitute q -> 1/q."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def scale_exponents(self, k: int) -> "LaurentPoly":
        """Substitute q -> q**k."""
        return LaurentPoly({e * k: c for e, c in self.terms.items()})

    def evaluate(self, x: Number):
        x = Fraction(x)
        return sum((c * x**e for e, c in self.terms.items()), Fraction(0))

    def has_nonnegative_coeffs(self) -> bool:
        return all(c >= 0 for c in self.terms.values())


PHI_MINUS_INV = LaurentPoly({1: 1, -1: -1})


def substitute_phi(p: Poly) -> LaurentPoly:
    """Expand p(phi - 1/phi) as a Laurent polynomial in phi."""
    acc = LaurentPoly()
    for c in reversed(p.coeffs):
        acc = acc * PHI_MINUS_INV + c
    return acc
