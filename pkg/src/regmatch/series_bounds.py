"""Series truncation with certified tails, density deficits, the minimization
certificate, and the two-sided comparison machinery.

Everything that decides an inequality does so exactly: comparisons between
per-vertex log partition functions (1/n) ln A >= (1/m) ln B are settled as
A^m >= B^n over the rationals, and only reported margins pass through
interval arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .certified import (DEFAULT_BITS, MAX_BITS, Enclosure, Verdict,
                        log_enclosure)
from .errors import DomainError
from .graphs import Graph, count_subgraphs, neighborhood_edge_counts
from .matchpoly import gen_poly_value, q_complete
from .walks import PowerSums


def truncated_log_series(a: PowerSums, lam, terms: int) -> Fraction:
    """Partial sum sum_{k<=terms} a_k (-1)^(k-1) lam^k / k, exactly."""
    lam = Fraction(lam)
    if terms > a.order:
        raise DomainError(f"series needs a_1..a_{terms}, only {a.order} computed")
    total = Fraction(0)
    power = Fraction(1)
    for k in range(1, terms + 1):
        power *= lam
        total += (-1) ** (k - 1) * a.a(k) * power / k
    return total


@dataclass(frozen=True)
class TailBound:
    """Certified bound (4(d-1)lam)^t / t on the omitted series tail."""

    d: int
    lam: Fraction
    start: int
    bound: Fraction

    def bracket(self, partial: Fraction) -> Enclosure:
        """Enclosure of the true value given the partial sum through
        term start-1; the first omitted term has index `start`."""
        if self.start % 2 == 0:
            # omitted tail is <= 0 (alternating, first omitted term negative
            # in the signed sum)
            return Enclosure(partial - self.bound, partial)
        return Enclosure(partial, partial + self.bound)


def tail_bound(d: int, lam, start: int) -> TailBound:
    """Bound on |sum_{k>=start} a_k (-1)^(k-1) lam^k / k| for d-regular
    graphs; needs x = 4(d-1)lam in [0, 1)."""
    lam = Fraction(lam)
    if d < 2 or start < 1:
        raise DomainError("need d >= 2 and start >= 1")
    x = 4 * (d - 1) * lam
    if not 0 <= x < 1:
        raise DomainError(f"4(d-1)lam = {x} outside [0, 1): tail not controlled")
    return TailBound(d, lam, start, x ** start / start)


# ---------------------------------------------------------------------------
# Density deficits

def complete_graph_densities(d: int) -> tuple[Fraction, Fraction]:
    """(rho(C_3, K_{d+1}), rho(C_4, K_{d+1})) per vertex."""
    n = d + 1
    return Fraction(comb(n, 3), n), Fraction(3 * comb(n, 4), n)


@dataclass(frozen=True)
class DeficitPair:
    """Triangle and 4-cycle densities of G measured against K_{d+1}."""

    d: int
    n: int
    delta3: Fraction
    delta4: Fraction
    t_sum: int  # sum over vertices of C(d,2) - e(N(v))

    @property
    def satisfies_lower(self) -> bool:
        """delta3 >= 1/3, guaranteed when no component is K_{d+1}."""
        return self.delta3 >= Fraction(1, 3)

    @property
    def satisfies_ratio(self) -> bool:
        """delta4 <= (3(d-2)/2) delta3, same hypothesis."""
        return self.delta4 <= Fraction(3 * (self.d - 2), 2) * self.delta3


def deficits(g: Graph, d: int) -> DeficitPair:
    if g.regular_degree() != d:
        raise DomainError("graph is not d-regular")
    counts = count_subgraphs(g)
    rho3_k, rho4_k = complete_graph_densities(d)
    delta3 = rho3_k - counts.rho3
    delta4 = rho4_k - counts.rho4
    t_sum = sum(comb(d, 2) - e for e in neighborhood_edge_counts(g))
    # e(N(v)) counts each triangle through v once, so sum_v e(N(v)) = 3 #C3
    if Fraction(t_sum, 3 * g.n) != delta3:
        raise DomainError(
            f"deficit routes disagree: t_sum/3n = {Fraction(t_sum, 3 * g.n)}"
            f" vs density route {delta3}")
    return DeficitPair(d, g.n, delta3, delta4, t_sum)


# ---------------------------------------------------------------------------
# Main-theorem certificate

def main_certificate(d: int, lam) -> Fraction:
    """(1/6)(2 lam^3 - 15 d lam^4 - (4 d lam)^6); positive whenever
    1/lam > 16 d^2, and positivity certifies the minimization inequality
    for every d-regular graph with no K_{d+1} component."""
    lam = Fraction(lam)
    if lam <= 0:
        raise DomainError("certificate defined for lam > 0")
    return (2 * lam ** 3 - 15 * d * lam ** 4 - (4 * d * lam) ** 6) / 6


@dataclass(frozen=True)
class CertificateChain:
    """The margin lower bounds of the minimization proof, tightest first.

    deficit_form   uses G's actual deficits,
    after_ratio    replaces delta4 by its (3(d-2)/2) delta3 bound,
    after_lower    then replaces delta3 by 1/3,
    simplified     the closed-form (1/6)(2l^3 - 15dl^4 - (4dl)^6).
    """

    d: int
    lam: Fraction
    deficit_form: Fraction
    after_ratio: Fraction
    after_lower: Fraction
    simplified: Fraction

    @property
    def ordered(self) -> bool:
        return (self.deficit_form >= self.after_ratio >= self.after_lower
                >= self.simplified)


def certificate_chain(g: Graph, d: int, lam) -> CertificateChain:
    lam = Fraction(lam)
    if lam <= 0:
        raise DomainError("certificate defined for lam > 0")
    dp = deficits(g, d)
    tail = (4 * (d - 1) * lam) ** 6 / 6
    body = lam ** 3 - 6 * (d - 1) * lam ** 4
    deficit_form = dp.delta3 * body - dp.delta4 * lam ** 4 - tail
    ratio_body = body - Fraction(3 * (d - 2), 2) * lam ** 4
    after_ratio = dp.delta3 * ratio_body - tail
    after_lower = Fraction(1, 3) * ratio_body - tail
    return CertificateChain(d, lam, deficit_form, after_ratio, after_lower,
                            main_certificate(d, lam))


# ---------------------------------------------------------------------------
# Certified inequality verdicts

@dataclass(frozen=True)
class InequalityReport:
    verdict: Verdict
    margin: Enclosure          # (1/n) ln M_G - (1/m) ln M_H
    equality: bool
    lhs_value: Fraction        # M_G(lam)
    rhs_value: Fraction        # M_H(lam)
    bits: int


def _log_margin(a: Fraction, n: int, b: Fraction, m: int, bits: int) -> Enclosure:
    return log_enclosure(a, bits) / n - log_enclosure(b, bits) / m


def compare_log_per_vertex(a: Fraction, n: int, b: Fraction, m: int,
                           bits: int = DEFAULT_BITS) -> InequalityReport:
    """Certified verdict for (1/n) ln a >= (1/m) ln b, decided exactly as
    a^m >= b^n; the reported margin enclosure is tightened until its sign
    agrees with the exact verdict."""
    if a <= 0 or b <= 0:
        raise DomainError("log comparison needs positive values")
    lhs, rhs = a ** m, b ** n
    equality = lhs == rhs
    verdict = Verdict.HOLDS if lhs >= rhs else Verdict.FAILS
    if equality:
        return InequalityReport(verdict, Enclosure.exact(0), True, a, b, bits)
    cur = bits
    while True:
        margin = _log_margin(a, n, b, m, cur)
        if (margin.lo > 0) if lhs > rhs else (margin.hi < 0):
            return InequalityReport(verdict, margin, False, a, b, cur)
        if cur >= MAX_BITS:
            # verdict is exact regardless; only the margin stays coarse
            return InequalityReport(verdict, margin, False, a, b, cur)
        cur = min(2 * cur, MAX_BITS)


def verify_inequality(g: Graph, d: int, lam,
                      bits: int = DEFAULT_BITS) -> InequalityReport:
    """Certified check of (1/n) ln M_G(lam) >= (1/(d+1)) ln M_{K_{d+1}}(lam)."""
    if g.regular_degree() != d:
        raise DomainError("graph is not d-regular")
    lam = Fraction(lam)
    a = gen_poly_value(g, lam)
    b = _complete_value(d, lam)
    if a <= 0:
        raise DomainError(f"M_G({lam}) = {a} is not positive")
    if b <= 0:
        raise DomainError(f"M_K_{d+1}({lam}) = {b} is not positive")
    return compare_log_per_vertex(a, g.n, b, d + 1, bits)


def _complete_value(d: int, lam: Fraction) -> Fraction:
    value = Fraction(0)
    for c in reversed(q_complete(d + 1).coeffs):
        value = value * lam + c
    return value


# ---------------------------------------------------------------------------
# Infinite tree closed form and the negative-lambda sandwich

def tree_closed_form(d: int, lam, bits: int = DEFAULT_BITS) -> Enclosure:
    """Certified enclosure of the per-vertex log partition function of the
    infinite d-regular tree:

        (1/2) ln S_d(lam),  S_d = (1/eta^2) ((d-1)/(d-eta))^(d-2),
        eta = (sqrt(1+4(d-1)lam) - 1) / (2(d-1)lam),

    valid for lam >= -1/(4(d-1)); the value at lam = 0 is 0."""
    lam = Fraction(lam)
    if d < 2:
        raise DomainError("need d >= 2")
    if lam == 0:
        return Enclosure.exact(0)
    if 1 + 4 * (d - 1) * lam < 0:
        raise DomainError(f"lam = {lam} below -1/(4(d-1)): tree value undefined")
    import mpmath
    iv = mpmath.iv
    old = iv.prec
    iv.prec = bits + 10
    try:
        lam_iv = iv.mpf(lam.numerator) / iv.mpf(lam.denominator)
        disc = 1 + 4 * (d - 1) * lam_iv
        eta = (iv.sqrt(disc) - 1) / (2 * (d - 1) * lam_iv)
        s = 1 / (eta * eta)
        if d > 2:
            s = s * ((d - 1) / (d - eta)) ** (d - 2)
        value = iv.log(s) / 2
        from .certified import _iv_to_enclosure
        return _iv_to_enclosure(value)
    finally:
        iv.prec = old


@dataclass(frozen=True)
class SandwichReport:
    """Two-sided comparison tree <= G <= K_{d+1} at one negative lam."""

    lam: Fraction
    lower_verdict: Verdict     # tree side
    upper_verdict: Verdict     # complete-graph side
    lower_margin: Enclosure    # (1/n) ln M_G - (1/2) ln S_d
    upper_margin: Enclosure    # (1/(d+1)) ln M_K - (1/n) ln M_G
    upper_equality: bool
    bits: int

    @property
    def verdict(self) -> Verdict:
        order = (Verdict.FAILS, Verdict.INCONCLUSIVE, Verdict.HOLDS)
        return min((self.lower_verdict, self.upper_verdict), key=order.index)


def negative_lambda_sandwich(g: Graph, d: int, lam,
                             bits: int = DEFAULT_BITS) -> SandwichReport:
    if g.regular_degree() != d:
        raise DomainError("graph is not d-regular")
    lam = Fraction(lam)
    if not -Fraction(1, 4 * (d - 1)) <= lam <= 0:
        raise DomainError(f"lam = {lam} outside [-1/(4(d-1)), 0]")
    value_g = gen_poly_value(g, lam)
    if value_g <= 0:
        raise DomainError(f"M_G({lam}) = {value_g} is not positive")
    value_k = _complete_value(d, lam)
    if value_k <= 0:
        raise DomainError(f"M_K_{d+1}({lam}) = {value_k} is not positive")
    if lam == 0:
        zero = Enclosure.exact(0)
        return SandwichReport(lam, Verdict.HOLDS, Verdict.HOLDS, zero, zero,
                              True, bits)
    # upper side is exact: (1/n) ln M_G <= (1/(d+1)) ln M_K
    upper = compare_log_per_vertex(value_k, d + 1, value_g, g.n, bits)
    # lower side needs the (irrational) tree value; escalate then give up
    cur = bits
    while True:
        tree = tree_closed_form(d, lam, cur)
        graph_log = log_enclosure(value_g, cur) / g.n
        lower_margin = graph_log - tree
        if lower_margin.lo >= 0:
            lower = Verdict.HOLDS
            break
        if lower_margin.hi < 0:
            lower = Verdict.FAILS
            break
        if cur >= MAX_BITS:
            lower = Verdict.INCONCLUSIVE
            break
        cur = min(2 * cur, MAX_BITS)
    return SandwichReport(lam, lower, upper.verdict, lower_margin,
                          upper.margin, upper.equality, cur)
