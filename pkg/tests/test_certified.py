"""Exact-rational enclosures and certified elementary functions."""

from fractions import Fraction

import pytest

from regmatch.certified import (
    DEFAULT_BITS,
    MAX_BITS,
    Enclosure,
    Verdict,
    compare_enclosures,
    exp_enclosure,
    log_enclosure,
    sqrt_enclosure,
    with_escalation,
)


def test_enclosure_invariants():
    e = Enclosure(Fraction(1, 3), Fraction(1, 2))
    assert e.width == Fraction(1, 6)
    assert e.contains(Fraction(2, 5))
    assert not e.contains(1)
    with pytest.raises(ValueError):
        Enclosure(Fraction(1), Fraction(0))


def test_enclosure_arithmetic():
    a = Enclosure(Fraction(1), Fraction(2))
    b = Enclosure(Fraction(-1), Fraction(3))
    s = a + b
    assert (s.lo, s.hi) == (0, 5)
    d = a - b
    assert (d.lo, d.hi) == (-2, 3)
    half = a / 2
    assert (half.lo, half.hi) == (Fraction(1, 2), 1)
    neg = a * -1
    assert (neg.lo, neg.hi) == (-2, -1)
    with pytest.raises(ZeroDivisionError):
        a / 0


def test_enclosure_comparisons():
    a = Enclosure(Fraction(1), Fraction(2))
    assert a.certainly_gt(Fraction(1, 2))
    assert not a.certainly_gt(1)
    assert a.certainly_lt(3)
    assert Enclosure.exact(Fraction(7, 2)).width == 0


def test_log_enclosure_brackets_truth():
    # e^lo <= q <= e^hi iff lo <= ln q <= hi; check via exp round trip
    for q in (Fraction(2), Fraction(10), Fraction(1, 3), Fraction(19, 64)):
        enc = log_enclosure(q)
        assert enc.width < Fraction(1, 2 ** 100)
        back = exp_enclosure(enc.lo)
        assert back.lo <= q
        back_hi = exp_enclosure(enc.hi)
        assert back_hi.hi >= q
    assert log_enclosure(Fraction(1)).contains(0)


def test_log_enclosure_rejects_nonpositive():
    with pytest.raises(Exception):
        log_enclosure(Fraction(0))
    with pytest.raises(Exception):
        log_enclosure(Fraction(-3))


def test_sqrt_enclosure_exact_squares():
    e = sqrt_enclosure(Fraction(9, 4))
    assert e.lo == e.hi == Fraction(3, 2)
    e = sqrt_enclosure(Fraction(2))
    assert e.width > 0
    assert e.lo ** 2 <= 2 <= e.hi ** 2


def test_escalation_runs_until_success():
    calls = []

    def attempt(bits):
        calls.append(bits)
        return "ok" if bits >= 512 else None

    result, bits = with_escalation(attempt, DEFAULT_BITS, MAX_BITS)
    assert result == "ok"
    assert bits == 512
    assert calls == [128, 256, 512]


def test_escalation_gives_up():
    result, bits = with_escalation(lambda b: None, DEFAULT_BITS, MAX_BITS)
    assert result is None
    assert bits == MAX_BITS


def test_compare_enclosures():
    a = Enclosure(Fraction(2), Fraction(3))
    b = Enclosure(Fraction(0), Fraction(1))
    assert compare_enclosures(a, b) is Verdict.HOLDS
    assert compare_enclosures(b, a) is Verdict.FAILS
    assert compare_enclosures(a, Enclosure(Fraction(5, 2), Fraction(7, 2))) is None
