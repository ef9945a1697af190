"""Closed-form avalanche polynomials for trees, cycles, complete graphs and wheels.

Variable conventions match the graph constructors in :mod:`avalanche.graph`:
trees, cycles and complete graphs use ``x_1 .. x_n`` for ``v_1 .. v_n``;
wheels use ``x_0 .. x_{n-1}`` for the rim.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .errors import GraphError
from .graph import Graph, graph_from_edges, tree_graph
from .poly import MultiPoly, cyclic_poly, elementary_symmetric


# -- Fibonacci / Lucas --------------------------------------------------------

@lru_cache(maxsize=None)
def _fib_pair(k: int) -> tuple[int, int]:
    # (F_k, F_{k+1}) by fast doubling
    if k == 0:
        return 0, 1
    a, b = _fib_pair(k // 2)
    c = a * (2 * b - a)
    d = a * a + b * b
    return (d, c + d) if k % 2 else (c, d)


def fib(k: int) -> int:
    """Fibonacci numbers indexed so that ``fib(1) == fib(2) == 1``."""
    if k < 0:
        raise ValueError("Fibonacci index must be non-negative")
    return _fib_pair(k)[0]


def lucas(k: int) -> int:
    """Lucas numbers 2, 1, 3, 4, 7, ..."""
    if k < 0:
        raise ValueError("Lucas index must be non-negative")
    if k == 0:
        return 2
    return fib(k - 1) + fib(k + 1)


# -- trees ----------------------------------------------------------------------

@dataclass(frozen=True)
class RootedTree:
    """``parent[v]`` for every vertex, ``-1`` at the root (the sink)."""

    parent: tuple[int, ...]

    def __post_init__(self):
        p = tuple(self.parent)
        object.__setattr__(self, "parent", p)
        roots = [v for v, q in enumerate(p) if q == -1]
        if len(roots) != 1:
            raise GraphError("a rooted tree needs exactly one root")
        for v in range(len(p)):
            seen = set()
            u = v
            while u != -1:
                if u in seen or not -1 <= p[u] < len(p):
                    raise GraphError(f"parent array is not a tree (vertex {v})")
                seen.add(u)
                u = p[u]

    @property
    def root(self) -> int:
        return self.parent.index(-1)

    @property
    def n_vertices(self) -> int:
        return len(self.parent)

    @property
    def nonroot(self) -> tuple[int, ...]:
        return tuple(v for v in range(len(self.parent)) if self.parent[v] != -1)

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for v, q in enumerate(self.parent):
            if q >= 0:
                kids[q].append(v)
        return kids

    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> RootedTree:
        """Root 0; ``parents[i]`` is the parent of vertex ``i + 1``."""
        return cls((-1,) + tuple(parents))

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[Sequence[int]], root: int = 0) -> RootedTree:
        """Orient an undirected tree away from ``root``; labels are kept."""
        adj: list[list[int]] = [[] for _ in range(n_vertices)]
        count = 0
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
            count += 1
        if count != n_vertices - 1:
            raise GraphError("a tree on n vertices has n - 1 edges")
        parent = [None] * n_vertices
        parent[root] = -1
        stack = [root]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if parent[v] is None:
                    parent[v] = u
                    stack.append(v)
        if any(q is None for q in parent):
            raise GraphError("edges do not form a spanning tree")
        return cls(tuple(parent))

    def parents(self) -> list[int]:
        """Parent list for vertices ``1 ..`` when the root is vertex 0."""
        if self.root != 0:
            raise GraphError("parent-list form needs the root at vertex 0")
        return list(self.parent[1:])

    def to_graph(self) -> Graph:
        if self.root == 0:
            return tree_graph(self.parent[1:])
        return graph_from_edges(self.n_vertices,
                                [(v, q) for v, q in enumerate(self.parent) if q >= 0],
                                sink=self.root)


def tree_poly(t: RootedTree) -> MultiPoly:
    """Avalanche polynomial of a tree built from its branches at the root.

    A branch hanging from child ``u`` contributes ``X_u * (A_u + 1)``, where
    ``X_u`` multiplies the variables of ``u``'s whole subtree and ``A_u`` is the
    polynomial of that subtree with ``u`` as its sink.  Branches add.
    """
    order = t.nonroot
    n = len(order)
    idx = {v: i for i, v in enumerate(order)}
    kids = t.children()
    zero = (0,) * n

    def walk(v):
        # (terms of A_v, compact indices of the subtree strictly below v)
        terms: dict[tuple[int, ...], int] = {}
        below: list[int] = []
        for u in kids[v]:
            sub, members = walk(u)
            members.append(idx[u])
            mask = [0] * n
            for i in members:
                mask[i] = 1
            sub[zero] = sub.get(zero, 0) + 1
            for e, k in sub.items():
                e = tuple(a + b for a, b in zip(e, mask))
                terms[e] = terms.get(e, 0) + k
            below.extend(members)
        return terms, below

    depth = t.n_vertices + 100
    if depth > sys.getrecursionlimit():
        sys.setrecursionlimit(depth)
    return MultiPoly._raw(n, walk(t.root)[0])


# -- cycles ----------------------------------------------------------------------

def _cycle_max_exponent(q: int, i: int) -> list[int]:
    if not 1 <= i <= q:
        raise ValueError(f"vertex index {i} out of range 1..{q}")
    m = min(i, q - i + 1)
    exp = [0] * q
    for j in range(1, m + 1):
        for k in range(j, q - j + 2):
            exp[k - 1] += 1
    return exp


def cycle_monomial_max(n: int, i: int, offset: int = 0, n_vars: int | None = None) -> MultiPoly:
    """Avalanche monomial of ``1^n + 1_{v_i}`` on ``C_{n+1}``.

    ``offset`` shifts the variables (``x_j -> x_{j+offset}``) inside a larger
    ring of ``n_vars`` variables, which is how relabeled sub-cycles are emitted.
    """
    exp = _cycle_max_exponent(n, i)
    n_vars = n + offset if n_vars is None else n_vars
    full = [0] * n_vars
    full[offset:offset + n] = exp
    return MultiPoly.monomial(full)


def cycle_recurrent(n: int, p: int) -> tuple[int, ...]:
    """``1^n`` for ``p == 0``, else ``b_p`` with the single 0 at ``v_p``."""
    if not 0 <= p <= n:
        raise ValueError(f"position {p} out of range 0..{n}")
    return tuple(0 if j == p else 1 for j in range(1, n + 1))


def cycle_poly(n_plus_1: int) -> MultiPoly:
    n = n_plus_1 - 1
    if n < 1:
        raise ValueError("cycle needs at least 2 vertices")
    total = MultiPoly.constant(n, n)  # the empty avalanches b_p + 1_{v_p}
    for i in range(1, n + 1):
        total = total + cycle_monomial_max(n, i)
    # b_p, vertices left of the hole: the avalanche runs on C_p over v_1..v_{p-1}
    for p in range(2, n + 1):
        for i in range(1, p):
            total = total + cycle_monomial_max(p - 1, i, 0, n)
    # b_p, vertices right of the hole: C_{n-p+1} relabeled v_{p+1}..v_n
    for p in range(1, n):
        for i in range(p + 1, n + 1):
            total = total + cycle_monomial_max(n - p, i - p, p, n)
    return total


# -- complete graphs -------------------------------------------------------------

def complete_lambda(n: int, m: int) -> int:
    """Number of principal avalanches of size ``m`` on ``K_{n+1}``."""
    if not 0 <= m <= n:
        raise ValueError("size out of range")
    if m == 0:
        return 0 if n < 2 else n * (n - 1) * (n + 1) ** (n - 2)
    tail = 1 if m == n else (n - m + 1) ** (n - m - 1)
    return comb(n, m) * m ** (m - 1) * tail


def complete_poly(n_plus_1: int) -> MultiPoly:
    n = n_plus_1 - 1
    if n < 1:
        raise ValueError("complete graph needs at least 2 vertices")
    total = MultiPoly.zero(n)
    for m in range(n + 1):
        lam = complete_lambda(n, m)
        coef, rem = divmod(lam, comb(n, m))
        if rem:
            raise ArithmeticError(f"lambda_{m} = {lam} is not divisible by C({n},{m})")
        total = total + elementary_symmetric(n, m).scale(coef)
    return total


# -- wheels ----------------------------------------------------------------------

def wheel_lambda(n: int, m: int) -> int:
    """Number of principal avalanches of size ``m`` on ``W_n``."""
    if n < 3 or not 0 <= m <= n:
        raise ValueError("need n >= 3 and 0 <= m <= n")
    if m == 0:
        return 2 * n * (fib(2 * n - 1) - 1)
    if m == n:
        return n * n
    return n * m * fib(2 * (n - m))


def wheel_poly(n: int) -> MultiPoly:
    if n < 3:
        raise ValueError("wheel needs at least 3 rim vertices")
    total = cyclic_poly(n, n).scale(n * n)
    for m in range(1, n):
        total = total + cyclic_poly(n, m).scale(m * fib(2 * (n - m)))
    return total + MultiPoly.constant(n, 2 * n * (fib(2 * n - 1) - 1))


def wheel_spanning_trees(n: int) -> int:
    return lucas(2 * n) - 2


def wheel_zero_fraction(n: int) -> Fraction:
    """Exact share of size-0 principal avalanches on ``W_n``; tends to ``1 - 1/sqrt(5)``."""
    return Fraction(wheel_lambda(n, 0), n * wheel_spanning_trees(n))


def all_rooted_trees(n_vertices: int):
    """Every labeled tree on ``n_vertices`` rooted at 0, decoded from Pruefer sequences."""
    if n_vertices == 1:
        yield RootedTree((-1,))
        return
    if n_vertices == 2:
        yield RootedTree((-1, 0))
        return
    for code in itertools.product(range(n_vertices), repeat=n_vertices - 2):
        degree = [1] * n_vertices
        for x in code:
            degree[x] += 1
        edges = []
        for x in code:
            leaf = degree.index(1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [w for w in range(n_vertices) if degree[w] == 1]
        edges.append((u, v))
        yield RootedTree.from_edges(n_vertices, edges, 0)
