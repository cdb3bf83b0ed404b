"""Dense exact-coefficient univariate polynomials and Sturm-chain root counting.

Coefficients are Python ints or fractions.Fraction, stored lowest degree
first; all arithmetic is exact.  The zero polynomial has an empty
coefficient tuple and degree -1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _trim(coeffs: Sequence) -> tuple:
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return tuple(coeffs[:i])


class Poly:
    """Immutable dense polynomial over the rationals (ints allowed)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim(tuple(coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        """Coefficient of x**k (0 outside the stored range)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly()
            return Poly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by x**k."""
        if self.is_zero():
            return self
        return Poly((0,) * k + self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = Fraction(self.leading)
        return Poly(tuple(Fraction(c) / lead for c in self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
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
        return "Poly(" + " + ".join(terms) + ")"


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division over the rationals: a = q*b + r, deg r < deg b."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a.coeffs]
    q = [Fraction(0)] * max(len(r) - len(b.coeffs) + 1, 0)
    blead = Fraction(b.leading)
    db = b.degree
    while len(r) - 1 >= db and any(r):
        # strip exact-zero leading entries introduced by cancellation
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        shift = len(r) - 1 - db
        factor = r[-1] / blead
        q[shift] = factor
        for i, c in enumerate(b.coeffs):
            r[shift + i] -= factor * c
        r.pop()
    return Poly(q), Poly(r)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals."""
    while not b.is_zero():
        _, r = poly_divmod(a, b)
        a, b = b, r
    return a.monic() if not a.is_zero() else a


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun-style decomposition: p = lead * prod f_i**i with f_i squarefree, monic.

    Returns [(f_i, i)] for nonconstant f_i only.
    """
    if p.degree < 1:
        return []
    p = p.monic()
    out: list[tuple[Poly, int]] = []
    g = poly_gcd(p, p.derivative())
    w, _ = poly_divmod(p, g)  # product of distinct factors
    i = 1
    while w.degree >= 1:
        y = poly_gcd(w, g)
        f, _ = poly_divmod(w, y)
        if f.degree >= 1:
            out.append((f.monic(), i))
        w = y
        g, _ = poly_divmod(g, y)
        i += 1
    return out


def squarefree_part(p: Poly) -> Poly:
    if p.degree < 1:
        return p.monic()
    g = poly_gcd(p, p.derivative())
    q, _ = poly_divmod(p, g)
    return q.monic()


def sturm_chain(p: Poly) -> list[Poly]:
    """Standard Sturm sequence p, p', -rem(...), ... for squarefree p."""
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree >= 1:
        _, r = poly_divmod(chain[-2], chain[-1])
        if r.is_zero():
            break
        chain.append(-r)
    return [q for q in chain if not q.is_zero()]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _chain_signs_at(chain: Sequence[Poly], x) -> list[int]:
    if x == "-inf":
        return [_sign(q.leading) * (-1 if q.degree % 2 else 1) for q in chain]
    if x == "+inf":
        return [_sign(q.leading) for q in chain]
    return [_sign(q(x)) for q in chain]


def count_distinct_real_roots(p: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi).

    None endpoints mean -inf / +inf.  Finite endpoints must be exact
    rationals and must not be roots of p (raises ValueError if they are):
    with that restriction the open/closed distinction is immaterial and the
    Sturm count is exact.
    """
    if p.degree < 1:
        return 0
    sf = squarefree_part(p)
    a = "-inf" if lo is None else Fraction(lo)
    b = "+inf" if hi is None else Fraction(hi)
    for endpoint in (a, b):
        if endpoint not in ("-inf", "+inf") and sf(endpoint) == 0:
            raise ValueError(f"interval endpoint {endpoint} is a root")
    chain = sturm_chain(sf)
    va = _variations(_chain_signs_at(chain, a))
    vb = _variations(_chain_signs_at(chain, b))
    return va - vb


def count_real_roots_with_multiplicity(p: Poly, lo=None, hi=None) -> int:
    """Total number of real roots in (lo, hi) counted with multiplicity."""
    total = 0
    for factor, mult in squarefree_decomposition(p):
        total += mult * count_distinct_real_roots(factor, lo, hi)
    return total
