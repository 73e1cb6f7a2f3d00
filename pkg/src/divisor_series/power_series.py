"""Exact truncated power series over the rationals, and the five classical
series representations of T(q) = sum d(k) q^k as coefficient sequences.

All arithmetic is exact, and truncation points are chosen so that omitted
terms of each representation have degree beyond the retained order.  A match
reported by :func:`identity_report` is therefore an exact statement about the
first N+1 coefficients, not a floating-point approximation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .divisor_core import distinct_partition_stats, divisor_sieve
from .intervals import DomainError

Coeff = Union[int, Fraction]


class RepresentationId(enum.Enum):
    """The interchangeable constructions of T; identity checks iterate all."""

    DIVISOR = "DIVISOR"
    LAMBERT = "LAMBERT"
    CLAUSEN = "CLAUSEN"
    UCHIMURA = "UCHIMURA"
    MERCA_ALT = "MERCA_ALT"
    MERCA_PARTITION = "MERCA_PARTITION"


class TruncatedSeries:
    """sum c[k] q^k + O(q^{N+1}) with exact rational coefficients.

    Values are immutable; all operations return new series.  Binary
    operations truncate to the smaller order, so retained coefficients only
    ever depend on retained coefficients of the inputs.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Coeff]):
        if not coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        self.coeffs = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([Fraction(0)] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([Fraction(1)] + [Fraction(0)] * order)

    @classmethod
    def monomial(cls, coeff: Coeff, degree: int, order: int) -> "TruncatedSeries":
        c = [Fraction(0)] * (order + 1)
        if degree <= order:
            c[degree] = Fraction(coeff)
        return cls(c)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries([self.coeffs[k] - other.coeffs[k] for k in range(n + 1)])

    def scale(self, factor: Coeff) -> "TruncatedSeries":
        f = Fraction(factor)
        return TruncatedSeries([f * c for c in self.coeffs])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        # Cauchy product; iterate the sparser factor on the outside.
        nz_a = [(i, c) for i, c in enumerate(a[: n + 1]) if c]
        nz_b = [(i, c) for i, c in enumerate(b[: n + 1]) if c]
        if len(nz_b) < len(nz_a):
            nz_a, b = nz_b, a
        out = [Fraction(0)] * (n + 1)
        for i, c in nz_a:
            for j in range(n + 1 - i):
                d = b[j]
                if d:
                    out[i + j] += c * d
        return TruncatedSeries(out)

    def reciprocal(self) -> "TruncatedSeries":
        """Series b with self * b = 1 up to the order; needs c[0] != 0."""
        a = self.coeffs
        if a[0] == 0:
            raise DomainError("series with zero constant term has no reciprocal")
        n = self.order
        inv0 = 1 / a[0]
        support = [(j, c) for j, c in enumerate(a) if j > 0 and c]
        b = [inv0]
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j, c in support:
                if j > k:
                    break
                acc += c * b[k - j]
            b.append(-acc * inv0)
        return TruncatedSeries(b)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries(order={self.order}, [{head}{tail}])"


def q_pochhammer(k: Optional[int | float], order: int) -> TruncatedSeries:
    """(q;q)_k = prod_{j=1}^{k} (1 - q^j) truncated at `order`.

    Pass ``None`` (or ``math.inf``) for the infinite product; factors with
    j > order cannot touch retained coefficients and are skipped.
    """
    if order < 0:
        raise DomainError("order must be >= 0")
    infinite = k is None or (isinstance(k, float) and math.isinf(k))
    if not infinite:
        k = int(k)
        if k < 0:
            raise DomainError("k must be >= 0 or infinite")
    last = order if infinite else min(k, order)
    result = TruncatedSeries.one(order)
    for j in range(1, last + 1):
        factor = TruncatedSeries.one(order) - TruncatedSeries.monomial(1, j, order)
        result = result * factor
    return result


def _geometric_reciprocal(k: int, order: int) -> TruncatedSeries:
    """1/(1 - q^k) up to `order` via the generic reciprocal."""
    binomial = TruncatedSeries.one(order) - TruncatedSeries.monomial(1, k, order)
    return binomial.reciprocal()


def build_representation(rep: RepresentationId, order: int) -> TruncatedSeries:
    """Truncation of the chosen right-hand side for T.

    Internal sums run exactly far enough that every omitted term has degree
    beyond `order`: Lambert/Uchimura terms start at degree k, the alternating
    factorial series at k(k+1)/2, Clausen's at k^2.
    """
    if order < 1:
        raise DomainError("order must be >= 1")
    n = order

    if rep is RepresentationId.DIVISOR:
        table = divisor_sieve(n)
        return TruncatedSeries(table.d)

    if rep is RepresentationId.LAMBERT:
        total = TruncatedSeries.zero(n)
        for k in range(1, n + 1):
            term = _geometric_reciprocal(k, n) * TruncatedSeries.monomial(1, k, n)
            total = total + term
        return total

    if rep is RepresentationId.CLAUSEN:
        total = TruncatedSeries.zero(n)
        k = 1
        while k * k <= n:
            one_plus = TruncatedSeries.one(n) + TruncatedSeries.monomial(1, k, n)
            term = one_plus * _geometric_reciprocal(k, n)
            total = total + term * TruncatedSeries.monomial(1, k * k, n)
            k += 1
        return total

    if rep is RepresentationId.UCHIMURA:
        total = TruncatedSeries.zero(n)
        recip_pochhammer = TruncatedSeries.one(n)
        for k in range(1, n + 1):
            recip_pochhammer = recip_pochhammer * _geometric_reciprocal(k, n)
            total = total + recip_pochhammer * TruncatedSeries.monomial(k, k, n)
        return q_pochhammer(None, n) * total

    if rep is RepresentationId.MERCA_ALT:
        total = TruncatedSeries.zero(n)
        recip_pochhammer = TruncatedSeries.one(n)
        k = 1
        while k * (k + 1) // 2 <= n:
            recip_pochhammer = recip_pochhammer * _geometric_reciprocal(k, n)
            sign = 1 if k % 2 else -1
            term = recip_pochhammer * TruncatedSeries.monomial(sign * k, k * (k + 1) // 2, n)
            total = total + term
            k += 1
        return q_pochhammer(None, n).reciprocal() * total

    if rep is RepresentationId.MERCA_PARTITION:
        stats = distinct_partition_stats(n)
        weights = [Fraction(0)] + [
            Fraction(stats.s_odd[k] - stats.s_even[k]) for k in range(1, n + 1)
        ]
        return q_pochhammer(None, n).reciprocal() * TruncatedSeries(weights)

    raise ValueError(f"unknown representation {rep!r}")


def first_mismatch(a: TruncatedSeries, b: TruncatedSeries) -> Optional[int]:
    """Smallest index where the coefficients differ, or None if equal."""
    n = min(a.order, b.order)
    for k in range(n + 1):
        if a.coeffs[k] != b.coeffs[k]:
            return k
    return None


@dataclass(frozen=True)
class IdentityMatch:
    match: bool
    first_mismatch_index: Optional[int]


def identity_report(order: int) -> dict[RepresentationId, IdentityMatch]:
    """Compare every representation's coefficients against DIVISOR, exactly."""
    if order < 1:
        raise DomainError("order must be >= 1")
    reference = build_representation(RepresentationId.DIVISOR, order)
    report = {}
    for rep in RepresentationId:
        built = build_representation(rep, order)
        idx = first_mismatch(built, reference)
        report[rep] = IdentityMatch(match=idx is None, first_mismatch_index=idx)
    return report


# -- companion coefficient sequences -----------------------------------------
#
# Direct constructions of the three series whose closed forms
# ((1/q - 1) T(q) - 1,  T(q)/(1-q),  -log(1-q) T(q)) back the sharp-bound
# checks; the closed-form equalities are unit-tested coefficient-by-
# coefficient against these.


def divisor_difference_series(order: int) -> TruncatedSeries:
    """sum_{k>=1} (d(k+1) - d(k)) q^k."""
    if order < 1:
        raise DomainError("order must be >= 1")
    table = divisor_sieve(order + 1)
    return TruncatedSeries(
        [Fraction(0)] + [Fraction(table.d[k + 1] - table.d[k]) for k in range(1, order + 1)]
    )


def divisor_partial_sum_series(order: int) -> TruncatedSeries:
    """sum_{k>=1} (sum_{j<=k} d(j)) q^k."""
    if order < 1:
        raise DomainError("order must be >= 1")
    table = divisor_sieve(order)
    coeffs = [Fraction(0)]
    acc = 0
    for k in range(1, order + 1):
        acc += table.d[k]
        coeffs.append(Fraction(acc))
    return TruncatedSeries(coeffs)


def divisor_log_convolution_series(order: int) -> TruncatedSeries:
    """sum_{k>=2} (sum_{j<k} d(j)/(k-j)) q^k."""
    if order < 1:
        raise DomainError("order must be >= 1")
    table = divisor_sieve(order)
    coeffs = [Fraction(0), Fraction(0)]
    for k in range(2, order + 1):
        coeffs.append(sum(Fraction(table.d[j], k - j) for j in range(1, k)))
    return TruncatedSeries(coeffs)
