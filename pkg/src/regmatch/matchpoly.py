"""Matching polynomials via memoized deletion recursions.

The matching generating polynomial M(G, x) = sum_k m_k x^k counts k-edge
matchings.  It satisfies, for any vertex u and any edge e = (u, v),

    M(G) = M(G - u) + x * sum_{v ~ u} M(G - u - v)
    M(G) = M(G - e) + x * M(G - u - v)

and is multiplicative over connected components.  The engine recurses on
the vertex rule at a maximum-degree pivot, splits components first, and
memoizes on canonical forms so isomorphic fragments are computed once.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .certified import DEFAULT_BITS, Enclosure, log_enclosure
from .errors import DomainError
from .graphs import Graph, _bits, _canonical_order_masks, _BudgetExceeded
from .polynomials import Poly

# canonical search is abandoned beyond this many nodes; the raw labeled
# adjacency is used as a (weaker but sound) memo key instead
_CANON_NODE_BUDGET = 20000

_memo: dict[object, tuple[int, ...]] = {}


def clear_cache() -> None:
    _memo.clear()


def _induced_masks(masks: tuple[int, ...], keep: list[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(keep)}
    out = []
    for v in keep:
        m = 0
        for w in _bits(masks[v]):
            j = pos.get(w)
            if j is not None:
                m |= 1 << j
        out.append(m)
    return tuple(out)


def _components(masks: tuple[int, ...]) -> list[list[int]]:
    n = len(masks)
    seen = 0
    comps = []
    for s in range(n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= masks[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(_bits(comp))
    return comps


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _gen_coeffs(masks: tuple[int, ...]) -> list[int]:
    comps = _components(masks)
    if len(comps) == 1:
        return _component_coeffs(masks)
    result = [1]
    for comp in comps:
        result = _poly_mul(result, _component_coeffs(_induced_masks(masks, comp)))
    return result


def _memo_key(masks: tuple[int, ...]):
    n = len(masks)
    try:
        order, _ = _canonical_order_masks(n, masks, budget=_CANON_NODE_BUDGET)
    except _BudgetExceeded:
        return ("labeled", masks)
    relabeled = _induced_masks(masks, list(order))
    return ("canon", n, relabeled)


def _component_coeffs(masks: tuple[int, ...]) -> list[int]:
    n = len(masks)
    if n == 0:
        return [1]
    if n == 1:
        return [1]
    if n == 2:
        return [1, 1] if masks[0] else [1]
    key = _memo_key(masks)
    hit = _memo.get(key)
    if hit is not None:
        return list(hit)
    pivot = max(range(n), key=lambda v: masks[v].bit_count())
    rest = [v for v in range(n) if v != pivot]
    acc = _gen_coeffs(_induced_masks(masks, rest))
    branch_sum: list[int] = []
    for w in _bits(masks[pivot]):
        sub = _gen_coeffs(_induced_masks(masks, [v for v in rest if v != w]))
        if len(sub) > len(branch_sum):
            branch_sum += [0] * (len(sub) - len(branch_sum))
        for i, c in enumerate(sub):
            branch_sum[i] += c
    coeffs = acc + [0] * (1 + len(branch_sum) - len(acc))
    for i, c in enumerate(branch_sum):
        coeffs[i + 1] += c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    _memo[key] = tuple(coeffs)
    return coeffs


def matching_gen_poly(g: Graph) -> Poly:
    """Matching generating polynomial: coefficient k is the number of
    k-edge matchings; degree is the maximum matching size."""
    return Poly(_gen_coeffs(g.adj))


def matching_counts(g: Graph) -> tuple[int, ...]:
    return tuple(_gen_coeffs(g.adj))


def matching_poly_mu(g: Graph) -> Poly:
    """Signed matching polynomial mu(G, x) = sum_k (-1)^k m_k x^(n-2k)."""
    m = _gen_coeffs(g.adj)
    n = g.n
    coeffs = [0] * (n + 1)
    for k, mk in enumerate(m):
        coeffs[n - 2 * k] = (-1) ** k * mk
    return Poly(coeffs)


@lru_cache(maxsize=None)
def q_complete(n: int) -> Poly:
    """M(K_n, x) via q_n = q_{n-1} + (n-1) x q_{n-2}."""
    if n < 0:
        raise ValueError("need n >= 0")
    if n <= 1:
        return Poly([1])
    return q_complete(n - 1) + Poly([0, n - 1]) * q_complete(n - 2)


def q_complete_minus_edge(n: int) -> Poly:
    """M(K_n - e, x) = q_{n-1} + (n-2) x q_{n-2}."""
    if n < 2:
        raise ValueError("need n >= 2")
    return q_complete(n - 1) + Poly([0, n - 2]) * q_complete(n - 2)


def gen_poly_value(g: Graph, lam) -> Fraction:
    """Exact M(G, lam) at a rational point."""
    lam = Fraction(lam)
    value = Fraction(0)
    for c in reversed(_gen_coeffs(g.adj)):
        value = value * lam + c
    return value


def log_per_vertex(g: Graph, lam, bits: int = DEFAULT_BITS) -> Enclosure:
    """Certified enclosure of (1/n) ln M(G, lam); requires M(G, lam) > 0."""
    if g.n == 0:
        raise DomainError("empty graph has no per-vertex free energy")
    value = gen_poly_value(g, lam)
    if value <= 0:
        raise DomainError(f"M(G, {Fraction(lam)}) = {value} is not positive")
    return log_enclosure(value, bits) / g.n
