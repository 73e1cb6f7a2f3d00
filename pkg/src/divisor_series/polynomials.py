"""Dense univariate polynomials over the rationals and Sturm root counting.

Sturm chains are computed with exact Fraction coefficients; after every
Euclidean remainder the polynomial is reduced to its primitive part (content
divided out, sign kept) to stop the coefficient blow-up that degree-29
chains produce otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence, Union

from .intervals import DomainError

Rational = Union[int, Fraction]


class Polynomial:
    """Exact-rational polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Rational]):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def __call__(self, x: Rational) -> Fraction:
        x = x if isinstance(x, Fraction) else Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1)

    def scale(self, factor: Rational) -> "Polynomial":
        f = Fraction(factor)
        return Polynomial([f * c for c in self.coeffs])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            for j, d in enumerate(other.coeffs):
                if d:
                    out[i + j] += c * d
        return Polynomial(out)

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial([Fraction(0)])
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def divmod(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dcs = divisor.coeffs
        dd = divisor.degree
        lead = dcs[-1]
        quot = [Fraction(0)] * max(len(rem) - dd, 1)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if not c:
                continue
            f = c / lead
            quot[k - dd] = f
            for j in range(dd + 1):
                rem[k - dd + j] -= f * dcs[j]
        return Polynomial(quot), Polynomial(rem[:dd] if dd else [Fraction(0)])

    def primitive_part(self) -> "Polynomial":
        """Divide out the positive content; preserves signs and roots."""
        if self.is_zero:
            return self
        num = 0
        den = 1
        for c in self.coeffs:
            if c:
                num = gcd(num, abs(c.numerator))
                den = den * c.denominator // gcd(den, c.denominator)
        content = Fraction(num, den)
        return Polynomial([c / content for c in self.coeffs])

    def __repr__(self) -> str:
        return f"Polynomial(degree={self.degree}, {list(self.coeffs)})"


def sturm_chain(p: Polynomial) -> list[Polynomial]:
    """p, p', then negated Euclidean remainders, each reduced to primitive
    part; stops at the last nonzero element."""
    chain = [p.primitive_part()]
    d = p.derivative()
    if not d.is_zero:
        chain.append(d.primitive_part())
    while chain[-1].degree > 0:
        _, rem = chain[-2].divmod(chain[-1])
        if rem.is_zero:
            break
        chain.append(rem.scale(-1).primitive_part())
    return chain


def _sign_variations(chain: Sequence[Polynomial], x: Fraction) -> int:
    signs = []
    for poly in chain:
        v = poly(x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_root_count(p: Polynomial, a: Rational, b: Rational) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b].

    Endpoint roots are handled exactly: roots at b are counted by deflating
    the factor (x - b) and adding one; roots at a are deflated away (they lie
    outside (a, b]).  With both endpoint values nonzero this is the classic
    sign-variation count V(a) - V(b).
    """
    if p.is_zero:
        raise DomainError("the zero polynomial has no root count")
    a = Fraction(a)
    b = Fraction(b)
    if not a < b:
        raise DomainError("need a < b")
    count = 0
    if p(b) == 0:
        count += 1
        while p(b) == 0 and p.degree > 0:
            p, _ = p.divmod(Polynomial([-b, 1]))
    while p(a) == 0 and p.degree > 0:
        p, _ = p.divmod(Polynomial([-a, 1]))
    if p.degree == 0:
        return count
    chain = sturm_chain(p)
    return count + _sign_variations(chain, a) - _sign_variations(chain, b)
