"""Sinked multigraphs, Laplacians and exact integer linear algebra.

Vertices are ``0 .. n_vertices - 1``.  The non-sink vertices, in increasing
order, form the "compact" index ``0 .. n - 1`` used by sandpiles, toppling
vectors and polynomial variables.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import GraphError, SingularMatrixError

IntMatrix = list  # list[list[int]], arbitrary-precision entries


@dataclass(frozen=True, eq=False)
class Graph:
    n_vertices: int
    sink: int
    weights: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        n = self.n_vertices
        if n < 1:
            raise GraphError("a graph needs at least the sink vertex")
        if not 0 <= self.sink < n:
            raise GraphError(f"sink {self.sink} is not a vertex")
        w = tuple(tuple(map(int, row)) for row in self.weights)
        if len(w) != n or any(len(row) != n for row in w):
            raise GraphError("weight matrix must be n_vertices x n_vertices")
        for u in range(n):
            if w[u][u] != 0:
                raise GraphError(f"loop at vertex {u}")
        if w != tuple(zip(*w)):
            raise GraphError("weight matrix is not symmetric")
        if min(map(min, w)) < 0:
            raise GraphError("negative edge weight")
        object.__setattr__(self, "weights", w)
        if not self.labels:
            labels = tuple("s" if v == self.sink else f"v{v}" for v in range(n))
            object.__setattr__(self, "labels", labels)
        elif len(self.labels) != n:
            raise GraphError("one label per vertex required")
        seen = {self.sink}
        todo = [self.sink]
        while todo:
            row = w[todo.pop()]
            for v in range(n):
                if row[v] and v not in seen:
                    seen.add(v)
                    todo.append(v)
        if len(seen) != n:
            raise GraphError("graph is not connected")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n_vertices, self.sink, self.weights) == (
            other.n_vertices, other.sink, other.weights)

    def __hash__(self):
        return hash((self.n_vertices, self.sink, self.weights))

    def weight(self, u: int, v: int) -> int:
        return self.weights[u][v]

    def degree(self, v: int) -> int:
        return sum(self.weights[v])

    @cached_property
    def nonsink(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n_vertices) if v != self.sink)

    @cached_property
    def index(self) -> dict[int, int]:
        """Vertex id -> compact index."""
        return {v: i for i, v in enumerate(self.nonsink)}

    @property
    def n(self) -> int:
        """Number of non-sink vertices."""
        return self.n_vertices - 1

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        """Degrees of the non-sink vertices in compact order."""
        return tuple(self.degree(v) for v in self.nonsink)

    @cached_property
    def sink_weights(self) -> tuple[int, ...]:
        """The sandpile obtained by firing the sink."""
        return tuple(self.weights[v][self.sink] for v in self.nonsink)

    @cached_property
    def neighbors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Compact adjacency among non-sink vertices: ``((j, weight), ...)`` per vertex."""
        out = []
        for v in self.nonsink:
            row = self.weights[v]
            out.append(tuple((self.index[u], row[u]) for u in self.nonsink if row[u]))
        return tuple(out)

    @cached_property
    def var_names(self) -> tuple[str, ...]:
        names = []
        for v in self.nonsink:
            lab = self.labels[v]
            names.append("x" + lab[1:] if lab.startswith("v") and len(lab) > 1 else "x_" + lab)
        return tuple(names)

    def edges(self) -> list[tuple[int, int, int]]:
        return [(u, v, self.weights[u][v])
                for u in range(self.n_vertices)
                for v in range(u + 1, self.n_vertices) if self.weights[u][v]]

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        n = self.n_vertices
        w = [[0] * n for _ in range(n)]
        for u, v, k in self.edges():
            w[perm[u]][perm[v]] = w[perm[v]][perm[u]] = k
        return Graph(n, perm[self.sink], tuple(map(tuple, w)))

    def to_json(self) -> dict:
        return {"vertices": self.n_vertices, "sink": self.sink,
                "edges": [list(e) for e in self.edges()]}


def graph_from_edges(n_vertices: int, edges: Iterable[Sequence[int]], sink: int = 0,
                     labels: Sequence[str] = ()) -> Graph:
    """Build a graph from ``(u, v)`` or ``(u, v, weight)`` entries; repeats are summed."""
    w = [[0] * n_vertices for _ in range(n_vertices)]
    for e in edges:
        if len(e) == 2:
            u, v, k = e[0], e[1], 1
        elif len(e) == 3:
            u, v, k = e
        else:
            raise GraphError(f"bad edge entry {e!r}")
        if not (0 <= u < n_vertices and 0 <= v < n_vertices):
            raise GraphError(f"edge {e!r} references a missing vertex")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if k < 0:
            raise GraphError(f"negative weight on edge {e!r}")
        w[u][v] += k
        w[v][u] += k
    return Graph(n_vertices, sink, tuple(map(tuple, w)), tuple(labels))


def graph_from_json(data: dict) -> Graph:
    try:
        return graph_from_edges(int(data["vertices"]), data["edges"], int(data["sink"]))
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc


def load_graph(path) -> Graph:
    with open(path) as fh:
        return graph_from_json(json.load(fh))


# -- matrices ---------------------------------------------------------------

def laplacian(g: Graph) -> IntMatrix:
    n = g.n_vertices
    return [[g.degree(i) if i == j else -g.weights[i][j] for j in range(n)] for i in range(n)]


def reduced_laplacian(g: Graph) -> IntMatrix:
    full = laplacian(g)
    keep = g.nonsink
    return [[full[i][j] for j in keep] for i in keep]


def determinant(m: IntMatrix) -> int:
    """Bareiss fraction-free elimination; every division is exact."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def spanning_tree_count(g: Graph) -> int:
    return determinant(reduced_laplacian(g))


def invariant_factors(m: IntMatrix) -> list[int]:
    """Smith normal form diagonal ``d_1 | d_2 | ... | d_k`` of a nonsingular square matrix."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("invariant factors need a square matrix")
    if determinant(m) == 0:
        raise SingularMatrixError("matrix is singular")
    a = [list(row) for row in m]
    for k in range(n):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            i, j = best
            a[k], a[i] = a[i], a[k]
            for row in a:
                row[k], row[j] = row[j], row[k]
            p = a[k][k]
            dirty = False
            for i in range(k + 1, n):
                q = a[i][k] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[k])]
                dirty |= a[i][k] != 0
            for j in range(k + 1, n):
                q = a[k][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[k]
                dirty |= a[k][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(k + 1, n)
                        for j in range(k + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            a[k] = [x + y for x, y in zip(a[k], a[bad])]
    return [abs(a[k][k]) for k in range(n)]


# -- families -------------------------------------------------------------

def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices with the sink at one end (vertex 0)."""
    if n < 2:
        raise GraphError("path needs at least 2 vertices")
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    """``C_n``: sink 0 followed by ``v_1 .. v_{n-1}`` around the cycle; ``C_2`` is a double edge."""
    if n < 2:
        raise GraphError("cycle needs at least 2 vertices")
    if n == 2:
        return graph_from_edges(2, [(0, 1, 2)])
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    """``K_n`` with sink 0 and ``v_1 .. v_{n-1}``."""
    if n < 2:
        raise GraphError("complete graph needs at least 2 vertices")
    return graph_from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def wheel_graph(n: int) -> Graph:
    """``W_n``: hub sink 0 and rim vertices ``1 .. n`` displayed as ``v_0 .. v_{n-1}``."""
    if n < 3:
        raise GraphError("wheel needs at least 3 rim vertices")
    edges = [(0, i) for i in range(1, n + 1)]
    edges += [(i, i % n + 1) for i in range(1, n + 1)]
    labels = ["s"] + [f"v{i}" for i in range(n)]
    return graph_from_edges(n + 1, edges, labels=labels)


def fan_graph(k: int) -> Graph:
    """``F_k``: a path ``1 .. k`` plus the dominating sink 0."""
    if k < 2:
        raise GraphError("fan needs a path of at least 2 vertices")
    edges = [(0, i) for i in range(1, k + 1)] + [(i, i + 1) for i in range(1, k)]
    return graph_from_edges(k + 1, edges)


def grid_graph(rows: int, cols: int) -> Graph:
    """Cells ``1 .. rows*cols`` (row-major) of a rectangle, every one of degree 4.

    Edges that would leave the rectangle go to the sink 0, so corners get a
    weight-2 sink edge (weight 3 or 4 when the rectangle is one cell thick).
    """
    if rows < 1 or cols < 1:
        raise GraphError("grid needs positive dimensions")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = 1 + r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
            missing = (r == 0) + (r == rows - 1) + (c == 0) + (c == cols - 1)
            if missing:
                edges.append((0, v, missing))
    labels = ["s"] + [f"v{v}" for v in range(1, rows * cols + 1)]
    return graph_from_edges(rows * cols + 1, edges, labels=labels)


def tree_graph(parents: Sequence[int]) -> Graph:
    """Tree rooted at sink 0; ``parents[i]`` is the parent of vertex ``i + 1``."""
    n = len(parents) + 1
    for i, p in enumerate(parents):
        if not 0 <= p < n or p == i + 1:
            raise GraphError(f"bad parent {p} for vertex {i + 1}")
    g = graph_from_edges(n, [(i + 1, p) for i, p in enumerate(parents)])
    if len(g.edges()) != n - 1:
        raise GraphError("parent array does not describe a tree")
    return g


FAMILIES = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "wheel": wheel_graph,
    "fan": fan_graph,
    "grid": grid_graph,
    "tree-from-parents": tree_graph,
}


def make_family(kind: str, *params) -> Graph:
    try:
        build = FAMILIES[kind]
    except KeyError:
        raise GraphError(f"unknown family {kind!r}; choose from {sorted(FAMILIES)}") from None
    return build(*params)
