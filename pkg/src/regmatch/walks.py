"""Tree-like walks, path trees, and power sums of matching roots.

Writing M(G, x) = prod_i (1 + g_i x) with g_i = a_i^2 the squared matching
roots, the normalized power sums a_k = (1/n) sum_i g_i^k are the bridge
between the partition function and walk counts: n * 2 a_k equals the number
of closed tree-like walks of length 2k in G, summed over all starting
vertices, which in turn equals the number of closed walks at the roots of
the path trees T(G, u).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, DomainError
from .graphs import Graph, _bits
from .polynomials import Poly

_PATH_TREE_CAP = 500_000


@dataclass(frozen=True)
class PathTree:
    """Path tree T(G, u): nodes are self-avoiding paths from u, a node's
    parent is the path with its last vertex removed."""

    base_n: int
    root_vertex: int
    last: tuple[int, ...]     # last base vertex of each path node
    parent: tuple[int, ...]   # parent[0] == -1

    @property
    def size(self) -> int:
        return len(self.parent)

    def children(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.size)]
        for node in range(1, self.size):
            out[self.parent[node]].append(node)
        return out

    def as_graph(self) -> Graph:
        return Graph(self.size, [(self.parent[i], i) for i in range(1, self.size)])


def build_path_tree(g: Graph, u: int, cap: int = _PATH_TREE_CAP) -> PathTree:
    if not 0 <= u < g.n:
        raise DomainError(f"root {u} outside vertex range")
    last = [u]
    parent = [-1]
    masks = [1 << u]
    queue = [0]
    while queue:
        node = queue.pop()
        v = last[node]
        mask = masks[node]
        for w in _bits(g.adj[v] & ~mask):
            idx = len(last)
            if idx >= cap:
                raise CapacityError(f"path tree exceeds {cap} nodes")
            last.append(w)
            parent.append(node)
            masks.append(mask | 1 << w)
            queue.append(idx)
    return PathTree(g.n, u, tuple(last), tuple(parent))


def closed_walks_at_root(tree: PathTree, length: int) -> int:
    """Closed walks of the given length at the root of the path tree."""
    if length % 2:
        return 0
    size = tree.size
    children = tree.children()
    parent = tree.parent
    cur = [0] * size
    cur[0] = 1
    for _ in range(length):
        nxt = [0] * size
        for node, c in enumerate(cur):
            if not c:
                continue
            if parent[node] >= 0:
                nxt[parent[node]] += c
            for ch in children[node]:
                nxt[ch] += c
        cur = nxt
    return cur[0]


def tree_like_walk_total(g: Graph, length: int) -> int:
    """Closed tree-like walks of the given even length in G, summed over
    all starting vertices; equals n * s_length = n * 2 a_{length/2}."""
    if length < 2 or length % 2:
        raise DomainError("walk length must be even and >= 2")
    return sum(closed_walks_at_root(build_path_tree(g, u), length)
               for u in range(g.n))


@dataclass(frozen=True)
class PowerSums:
    """Normalized power sums a_1..a_K of the squared matching roots."""

    label: str
    values: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.values)

    def a(self, k: int) -> Fraction:
        if not 1 <= k <= len(self.values):
            raise DomainError(f"a_{k} not computed (order {len(self.values)})")
        return self.values[k - 1]

    def doubled(self, k: int) -> Fraction:
        """2 a_k, the spectral moment s_{2k} per vertex."""
        return 2 * self.a(k)


def power_sums_newton(gen_poly: Poly, n: int, order: int, label: str = "") -> PowerSums:
    """a_k from the matching generating polynomial via Newton's identities.

    The g_i are the roots of the reversed polynomial, so the elementary
    symmetric functions are the matching counts m_k (padded with zeros);
    power sums over all n "roots" (missing ones are zero) divided by n.
    """
    if n < 1:
        raise DomainError("need n >= 1")
    e = [gen_poly[k] for k in range(order + 1)]
    p: list[int] = []
    for k in range(1, order + 1):
        acc = (-1) ** (k - 1) * k * e[k]
        for i in range(1, k):
            acc += (-1) ** (i - 1) * e[i] * p[k - i - 1]
        p.append(acc)
    return PowerSums(label or f"n={n}", tuple(Fraction(pk, n) for pk in p))


def graph_power_sums(g: Graph, order: int, label: str = "") -> PowerSums:
    from .matchpoly import matching_gen_poly
    return power_sums_newton(matching_gen_poly(g), g.n, order,
                             label or f"graph-n{g.n}")


def infinite_tree_power_sums(d: int, order: int) -> PowerSums:
    """a_k of the infinite d-regular tree.

    2 a_k counts closed walks of length 2k at any vertex: a depth-indexed
    DP where the root has d children and every other node d - 1.
    """
    if d < 1:
        raise DomainError("need d >= 1")
    cur = [1] + [0] * order
    svals = []
    for step in range(1, 2 * order + 1):
        nxt = [0] * (order + 1)
        for j, c in enumerate(cur):
            if not c:
                continue
            if j > 0:
                nxt[j - 1] += c
            if j < order:
                nxt[j + 1] += c * (d if j == 0 else d - 1)
        cur = nxt
        if step % 2 == 0:
            svals.append(cur[0])
    return PowerSums(f"tree-d{d}", tuple(Fraction(s, 2) for s in svals))
