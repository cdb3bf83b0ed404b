"""Certified numerics: exact rational enclosures and three-way verdicts.

Every inequality reported by this package is decided either by exact
rational arithmetic or by directed-rounding interval arithmetic (mpmath's
iv context) whose endpoints are converted back to exact fractions.  A
comparison that interval arithmetic cannot settle at the precision cap is
reported INCONCLUSIVE, never guessed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, TypeVar

import mpmath
from mpmath import libmp

from .errors import DomainError

DEFAULT_BITS = 128
MAX_BITS = 1024
_GUARD_BITS = 10


class Verdict(enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inverted enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, x) -> "Enclosure":
        q = Fraction(x)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other) -> "Enclosure":
        other = _coerce(other)
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other) -> "Enclosure":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Enclosure":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Enclosure":
        other = _coerce(other)
        prods = [a * b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return Enclosure(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Enclosure":
        q = Fraction(other)
        if q == 0:
            raise ZeroDivisionError("enclosure divided by zero")
        if q > 0:
            return Enclosure(self.lo / q, self.hi / q)
        return Enclosure(self.hi / q, self.lo / q)

    def certainly_gt(self, x) -> bool:
        return self.lo > Fraction(x)

    def certainly_lt(self, x) -> bool:
        return self.hi < Fraction(x)

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _coerce(x) -> Enclosure:
    if isinstance(x, Enclosure):
        return x
    return Enclosure.exact(x)


def _mpf_to_fraction(raw) -> Fraction:
    if raw in (libmp.finf, libmp.fninf, libmp.fnan):
        raise DomainError("non-finite interval endpoint")
    return Fraction(*libmp.to_rational(raw))


def _iv_to_enclosure(x) -> Enclosure:
    lo_raw, hi_raw = x._mpi_
    return Enclosure(_mpf_to_fraction(lo_raw), _mpf_to_fraction(hi_raw))


def log_enclosure(q: Fraction, bits: int = DEFAULT_BITS) -> Enclosure:
    """Rigorous enclosure of ln(q) for a positive rational q."""
    q = Fraction(q)
    if q <= 0:
        raise DomainError(f"log of non-positive value {q}")
    if q == 1:
        return Enclosure.exact(0)
    iv = mpmath.iv
    old = iv.prec
    iv.prec = bits + _GUARD_BITS
    try:
        x = iv.mpf(q.numerator) / iv.mpf(q.denominator)
        return _iv_to_enclosure(iv.log(x))
    finally:
        iv.prec = old


def exp_enclosure(q: Fraction, bits: int = DEFAULT_BITS) -> Enclosure:
    iv = mpmath.iv
    old = iv.prec
    iv.prec = bits + _GUARD_BITS
    try:
        q = Fraction(q)
        x = iv.mpf(q.numerator) / iv.mpf(q.denominator)
        return _iv_to_enclosure(iv.exp(x))
    finally:
        iv.prec = old


def sqrt_enclosure(q: Fraction, bits: int = DEFAULT_BITS) -> Enclosure:
    q = Fraction(q)
    if q < 0:
        raise DomainError(f"sqrt of negative value {q}")
    r, exact = _isqrt_frac(q)
    if exact:
        return Enclosure.exact(r)
    iv = mpmath.iv
    old = iv.prec
    iv.prec = bits + _GUARD_BITS
    try:
        x = iv.mpf(q.numerator) / iv.mpf(q.denominator)
        return _iv_to_enclosure(iv.sqrt(x))
    finally:
        iv.prec = old


def _isqrt_frac(q: Fraction) -> tuple[Fraction, bool]:
    import math
    a = math.isqrt(q.numerator)
    b = math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b), True
    return Fraction(0), False


T = TypeVar("T")


def with_escalation(attempt: Callable[[int], T | None],
                    start_bits: int = DEFAULT_BITS,
                    max_bits: int = MAX_BITS) -> tuple[T | None, int]:
    """Run attempt(bits) with doubling precision until it returns a value.

    Returns (result, bits_used); result is None if even max_bits failed.
    """
    bits = start_bits
    while True:
        result = attempt(bits)
        if result is not None or bits >= max_bits:
            return result, bits
        bits = min(2 * bits, max_bits)


def compare_enclosures(a: Enclosure, b: Enclosure) -> Verdict | None:
    """a >= b certainly, certainly not, or unknown (None)."""
    if a.lo >= b.hi:
        return Verdict.HOLDS
    if a.hi < b.lo:
        return Verdict.FAILS
    return None
