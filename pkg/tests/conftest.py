"""Independent oracles shared by the tests.

Nothing here calls the code paths under test except where noted; each helper
recomputes its quantity from definitions (permutation expansion, edge-subset
enumeration, one-topple-at-a-time simulation, reachability from max).
"""

import itertools
import math
import random
from fractions import Fraction

import pytest

from avalanche.graph import graph_from_edges


def leibniz_det(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i, p in enumerate(perm):
            term *= m[i][p]
        total += term
    return total


def determinantal_invariant_factors(m):
    """d_k = D_k / D_{k-1} with D_k the gcd of all k x k minors."""
    n = len(m)
    D = [1]
    for k in range(1, n + 1):
        g = 0
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, leibniz_det([[m[r][c] for c in cols] for r in rows]))
        D.append(g)
    return [D[k] // D[k - 1] for k in range(1, n + 1)]


def brute_spanning_trees(g):
    """Count spanning trees of a multigraph by trying every (n-1)-subset of parallel edge classes."""
    edges = g.edges()
    n = g.n_vertices
    total = 0
    for subset in itertools.combinations(edges, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for u, v, _ in subset:
            a, b = find(u), find(v)
            if a == b:
                ok = False
                break
            parent[a] = b
        if ok:
            total += math.prod(w for _, _, w in subset)
    return total


def naive_stabilize(g, c, rng=None):
    """Topple one unstable vertex at a time, chosen at random; uses the raw weight matrix."""
    c = list(c)
    verts = g.nonsink
    deg = [g.degree(v) for v in verts]
    fired = [0] * len(verts)
    while True:
        unstable = [i for i in range(len(verts)) if c[i] >= deg[i]]
        if not unstable:
            return tuple(c), tuple(fired)
        i = rng.choice(unstable) if rng else unstable[0]
        c[i] -= deg[i]
        fired[i] += 1
        for j, u in enumerate(verts):
            if j != i:
                c[j] += g.weight(verts[i], u)


def recurrents_by_reachability(g):
    """Recurrent class = stable sandpiles reachable from max by adding grains."""
    from avalanche.engine import max_sandpile
    start = max_sandpile(g)
    seen = {start}
    todo = [start]
    while todo:
        c = todo.pop()
        for i in range(g.n):
            bumped = list(c)
            bumped[i] += 1
            s, _ = naive_stabilize(g, bumped)
            if s not in seen:
                seen.add(s)
                todo.append(s)
    return sorted(seen)


def random_graph(rng, max_vertices=8, max_weight=3):
    """Connected multigraph: random spanning tree plus a few random extra edges."""
    n = rng.randint(2, max_vertices)
    edges = []
    for v in range(1, n):
        edges.append((v, rng.randrange(v), rng.randint(1, max_weight)))
    for _ in range(rng.randint(0, n)):
        u, v = rng.sample(range(n), 2)
        edges.append((u, v, rng.randint(1, max_weight)))
    return graph_from_edges(n, edges, sink=rng.randrange(n))


def random_parents(rng, n_vertices):
    """Uniformly shuffled labels on a random recursive tree, root 0."""
    perm = list(range(1, n_vertices))
    rng.shuffle(perm)
    label = [0] + perm
    parent = [-1] * n_vertices
    for i in range(1, n_vertices):
        parent[label[i]] = label[rng.randrange(i)]
    return parent[1:]


def exact_decimal(frac: Fraction, digits=40):
    from decimal import Decimal, getcontext
    getcontext().prec = digits
    return Decimal(frac.numerator) / Decimal(frac.denominator)


@pytest.fixture
def rng():
    return random.Random(20141)
