"""Outward-rounded interval arithmetic for certified evaluation.

An :class:`Enclosure` is a closed interval [lo, hi] guaranteed to contain the
exact real value of the quantity it stands for.  All arithmetic and the
elementary functions round lo down and hi up, so soundness is preserved
through arbitrary compositions.  The heavy lifting is delegated to mpmath's
interval context (``mpmath.iv``), which implements directed rounding at a
configurable binary precision.

Certified computations run at :data:`DEFAULT_PRECISION` bits (overridable via
the ``DIVISOR_SERIES_PREC`` environment variable) and may be retried at doubled
precision up to :data:`MAX_PRECISION` when a requested output width cannot be
met.
"""

from __future__ import annotations

import enum
import math
import os
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator, Union

from mpmath import iv, mp
from mpmath.ctx_iv import ivmpf

DEFAULT_PRECISION = 128
MAX_PRECISION = 1024
PRECISION_ENV_VAR = "DIVISOR_SERIES_PREC"

#: Euler's constant, first 60 decimal digits (truncated, not rounded).
#: Stored as an input rather than computed; the digits are the standard
#: published expansion and are cross-checked against an independent
#: high-precision computation in the test suite.
GAMMA_DIGITS = "0.577215664901532860606512090082402431042159335939923598805767"


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PrecisionError(ArithmeticError):
    """The requested enclosure width is unachievable within the precision cap."""


class TermBudgetError(ArithmeticError):
    """A series evaluation would need more terms than the configured budget."""


class BracketSearchError(ArithmeticError):
    """A sign-change bracket search ran past its expansion limit."""


class Mode(enum.Enum):
    """Arithmetic mode: FAST is heuristic doubles, CERTIFIED carries proofs."""

    FAST = "fast"
    CERTIFIED = "certified"


Scalar = Union[int, float, Fraction, str]


def working_precision() -> int:
    """Default certified precision in bits (env override, floor 53)."""
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ValueError(f"{PRECISION_ENV_VAR} must be an integer, got {raw!r}") from exc
    return max(53, min(bits, MAX_PRECISION))


def precision_ladder(start: int | None = None) -> Iterator[int]:
    """Yield the working precision and its doublings up to MAX_PRECISION."""
    bits = start if start is not None else working_precision()
    while bits < MAX_PRECISION:
        yield bits
        bits *= 2
    yield MAX_PRECISION


@contextmanager
def interval_precision(bits: int):
    """Temporarily set the precision of the global mpmath interval context."""
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def to_ivmpf(value: Scalar | ivmpf) -> ivmpf:
    """Convert a scalar to an interval at the current working precision.

    int and float convert exactly; Fraction and decimal strings convert to the
    tightest representable outward-rounded interval.
    """
    if isinstance(value, ivmpf):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return iv.mpf(value.numerator)
        return iv.mpf(value.numerator) / iv.mpf(value.denominator)
    return iv.mpf(value)


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of an mpmath float (which is a dyadic rational)."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise ValueError(f"non-finite value {x!r} has no rational value")
    value = Fraction(man) * Fraction(2) ** exp
    return -value if sign else value


def _float_down(x) -> float:
    f = float(x)
    if math.isinf(f):
        return f
    return f if mp.mpf(f) <= x else math.nextafter(f, -math.inf)


def _float_up(x) -> float:
    f = float(x)
    if math.isinf(f):
        return f
    return f if mp.mpf(f) >= x else math.nextafter(f, math.inf)


class Enclosure:
    """A closed interval certified to contain the exact real value.

    Thin wrapper around an ``mpmath.iv`` interval.  Endpoints are exact binary
    floats of whatever precision the interval was computed at; extracting them
    never rounds.
    """

    __slots__ = ("_iv",)

    def __init__(self, value: Scalar | ivmpf | "Enclosure", hi: Scalar | None = None):
        if hi is not None:
            lo_iv = to_ivmpf(value)
            hi_iv = to_ivmpf(hi)
            a = mp.make_mpf(lo_iv._mpi_[0])
            b = mp.make_mpf(hi_iv._mpi_[1])
            if a > b:
                raise ValueError(f"enclosure endpoints out of order: {a} > {b}")
            self._iv = iv.mpf([a, b])
        elif isinstance(value, Enclosure):
            self._iv = value._iv
        else:
            self._iv = to_ivmpf(value)

    @classmethod
    def from_fraction_pair(cls, lo: Fraction, hi: Fraction) -> "Enclosure":
        return cls(lo, hi)

    @property
    def iv_value(self) -> ivmpf:
        return self._iv

    @property
    def lo(self):
        """Lower endpoint as an exact mpmath float."""
        return mp.make_mpf(self._iv._mpi_[0])

    @property
    def hi(self):
        """Upper endpoint as an exact mpmath float."""
        return mp.make_mpf(self._iv._mpi_[1])

    def width_upper(self):
        """An upper bound on hi - lo (outward-rounded subtraction)."""
        return mp.make_mpf(self._iv.delta._mpi_[1])

    def midpoint(self) -> float:
        return (self.to_floats()[0] + self.to_floats()[1]) / 2.0

    def to_floats(self) -> tuple[float, float]:
        """Endpoints as doubles, rounded outward so containment survives."""
        return _float_down(self.lo), _float_up(self.hi)

    # -- order queries ------------------------------------------------------

    def strictly_below(self, other: "Enclosure | Scalar") -> bool:
        """True when every value here is < every value of `other` (certified)."""
        other = other if isinstance(other, Enclosure) else Enclosure(other)
        return self.hi < other.lo

    def strictly_above(self, other: "Enclosure | Scalar") -> bool:
        other = other if isinstance(other, Enclosure) else Enclosure(other)
        return self.lo > other.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def intersects(self, other: "Enclosure") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def contains(self, value: Scalar) -> bool:
        """Exact containment test for a rational (or dyadic float) value."""
        v = Fraction(value) if not isinstance(value, Fraction) else value
        return mpf_to_fraction(self.lo) <= v <= mpf_to_fraction(self.hi)

    def contained_in(self, lo: Scalar, hi: Scalar) -> bool:
        """True when [self.lo, self.hi] is inside the exact rational [lo, hi]."""
        lo_f = Fraction(lo) if not isinstance(lo, Fraction) else lo
        hi_f = Fraction(hi) if not isinstance(hi, Fraction) else hi
        return lo_f <= mpf_to_fraction(self.lo) and mpf_to_fraction(self.hi) <= hi_f

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> ivmpf:
        if isinstance(other, Enclosure):
            return other._iv
        return to_ivmpf(other)

    def __add__(self, other):
        return Enclosure(self._iv + self._coerce(other))

    def __radd__(self, other):
        return Enclosure(self._coerce(other) + self._iv)

    def __sub__(self, other):
        return Enclosure(self._iv - self._coerce(other))

    def __rsub__(self, other):
        return Enclosure(self._coerce(other) - self._iv)

    def __mul__(self, other):
        return Enclosure(self._iv * self._coerce(other))

    def __rmul__(self, other):
        return Enclosure(self._coerce(other) * self._iv)

    def __truediv__(self, other):
        return Enclosure(self._iv / self._coerce(other))

    def __rtruediv__(self, other):
        return Enclosure(self._coerce(other) / self._iv)

    def __pow__(self, exponent):
        return Enclosure(self._iv ** self._coerce(exponent))

    def __neg__(self):
        return Enclosure(-self._iv)

    def log(self) -> "Enclosure":
        return Enclosure(iv.log(self._iv))

    def exp(self) -> "Enclosure":
        return Enclosure(iv.exp(self._iv))

    def sqrt(self) -> "Enclosure":
        return Enclosure(iv.sqrt(self._iv))

    def __repr__(self) -> str:
        lo, hi = self.to_floats()
        return f"Enclosure({lo!r}, {hi!r})"


def gamma_enclosure() -> Enclosure:
    """Enclosure of Euler's constant from the stored decimal digits.

    The digits are a truncation, so the true value lies strictly between
    digits/10^k and (digits+1)/10^k.
    """
    digits = GAMMA_DIGITS.replace("0.", "", 1)
    scale = 10 ** len(digits)
    d = int(digits)
    return Enclosure.from_fraction_pair(Fraction(d, scale), Fraction(d + 1, scale))


GAMMA_FLOAT = 0.5772156649015329


# -- generic elementary functions ------------------------------------------
#
# Formula code in lemma_functions/special_eval is written once against these
# helpers and runs in both modes: feed floats for FAST, ivmpf for CERTIFIED.


def ln(x):
    if isinstance(x, ivmpf):
        return iv.log(x)
    return math.log(x)


def exp_(x):
    if isinstance(x, ivmpf):
        return iv.exp(x)
    return math.exp(x)


def powr(base, exponent):
    """base ** exponent for positive base; exact integer exponents stay exact."""
    if isinstance(exponent, int):
        return base ** exponent
    if isinstance(base, ivmpf) or isinstance(exponent, ivmpf):
        return iv.exp(to_ivmpf(exponent) * iv.log(to_ivmpf(base)))
    return math.exp(exponent * math.log(base))


def float_ulp(x: float) -> float:
    return math.ulp(abs(x)) if x else math.ulp(1.0)
