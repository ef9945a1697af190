import itertools
import random
from fractions import Fraction

import pytest
from conftest import random_parents

from avalanche.engine import enumerate_recurrents, is_recurrent, stabilize
from avalanche.errors import GraphError
from avalanche.families import (RootedTree, _cycle_max_exponent, all_rooted_trees,
                                complete_lambda, complete_poly, cycle_monomial_max, cycle_poly,
                                cycle_recurrent, fib, lucas, tree_poly, wheel_lambda, wheel_poly,
                                wheel_spanning_trees, wheel_zero_fraction)
from avalanche.graph import (complete_graph, cycle_graph, fan_graph, spanning_tree_count,
                             wheel_graph)
from avalanche.poly import MultiPoly, cyclic_poly, elementary_symmetric, univariate
from avalanche.principal import (avalanche_monomial, avalanche_polynomial, size_distribution,
                                 tree_avalanche_polynomial)


def test_fib_and_lucas():
    assert [fib(k) for k in range(11)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    assert [lucas(k) for k in range(8)] == [2, 1, 3, 4, 7, 11, 18, 29]
    for k in range(1, 60):
        assert lucas(k) == fib(k - 1) + fib(k + 1)
    assert lucas(8) - 2 == 45
    assert fib(4) == 3 == spanning_tree_count(fan_graph(2))
    with pytest.raises(ValueError):
        fib(-1)


def test_fib_large():
    a, b = 0, 1
    for _ in range(300):
        a, b = b, a + b
    assert fib(300) == a


def test_cycle_monomials():
    assert cycle_monomial_max(5, 2) == MultiPoly.monomial((1, 2, 2, 2, 1))
    for n in range(1, 9):
        full = MultiPoly.monomial((1,) * n)
        assert cycle_monomial_max(n, 1) == full == cycle_monomial_max(n, n)
    assert cycle_monomial_max(2, 1, offset=3, n_vars=6) == MultiPoly.monomial((0, 0, 0, 1, 1, 0))
    with pytest.raises(ValueError):
        _cycle_max_exponent(3, 0)


@pytest.mark.parametrize("n", range(1, 9))
def test_cycle_monomials_match_simulation(n):
    g = cycle_graph(n + 1)
    for i in range(1, n + 1):
        assert avalanche_monomial(g, (1,) * n, i) == cycle_monomial_max(n, i)
    # b_p + 1_{v_p} is stable
    for p in range(1, n + 1):
        assert avalanche_monomial(g, cycle_recurrent(n, p), p) == 1


def test_cycle_recurrents():
    assert cycle_recurrent(4, 0) == (1, 1, 1, 1)
    assert cycle_recurrent(4, 2) == (1, 0, 1, 1)
    assert sorted(cycle_recurrent(5, p) for p in range(6)) == list(enumerate_recurrents(cycle_graph(6)))
    with pytest.raises(ValueError):
        cycle_recurrent(3, 4)


def test_small_closed_forms():
    assert cycle_poly(3).to_text() == "2*x1*x2 + x1 + x2 + 2"
    assert cycle_poly(2).to_text() == "x1 + 1"
    assert complete_poly(3) == cycle_poly(3)
    k4 = (elementary_symmetric(3, 3).scale(9) + elementary_symmetric(3, 2).scale(2)
          + elementary_symmetric(3, 1).scale(3) + MultiPoly.constant(3, 24))
    assert complete_poly(4) == k4
    w3 = (cyclic_poly(3, 3).scale(9) + cyclic_poly(3, 2).scale(2) + cyclic_poly(3, 1).scale(3)
          + MultiPoly.constant(3, 24))
    assert wheel_poly(3) == w3
    assert wheel_poly(3).terms == complete_poly(4).terms
    with pytest.raises(ValueError):
        wheel_poly(2)


@pytest.mark.parametrize("n", range(2, 8))
def test_cycle_closed_form(n):
    assert cycle_poly(n) == avalanche_polynomial(cycle_graph(n))


@pytest.mark.parametrize("n", range(2, 6))
def test_complete_closed_form(n):
    assert complete_poly(n) == avalanche_polynomial(complete_graph(n))


@pytest.mark.parametrize("n", range(3, 7))
def test_wheel_closed_form(n):
    assert wheel_poly(n) == avalanche_polynomial(wheel_graph(n))


@pytest.mark.parametrize("n", range(1, 7))
def test_complete_lambda_by_count(n):
    dist = size_distribution(complete_graph(n + 1))
    for m in range(n + 1):
        assert dist.get(m, 0) == complete_lambda(n, m)


@pytest.mark.parametrize("n", range(3, 8))
def test_wheel_lambda_by_count(n):
    dist = size_distribution(wheel_graph(n))
    for m in range(n + 1):
        assert dist.get(m, 0) == wheel_lambda(n, m)
    assert dist[n] == n * n and dist[n - 1] == n * (n - 1)
    assert dist[0] == 2 * n * (fib(2 * n - 1) - 1)
    assert sum(dist.values()) == n * wheel_spanning_trees(n)


def _maximal_two_string(c, v):
    """Length of the cyclic run of 2s through v (0 if c[v] != 2)."""
    n = len(c)
    if c[v] != 2:
        return 0
    if all(x == 2 for x in c):
        return n
    length = 1
    k = (v + 1) % n
    while c[k] == 2:
        length += 1
        k = (k + 1) % n
    k = (v - 1) % n
    while c[k] == 2:
        length += 1
        k = (k - 1) % n
    return length


@pytest.mark.parametrize("n", range(3, 9))
def test_wheel_two_string_law(n):
    g = wheel_graph(n)
    for c in enumerate_recurrents(g):
        for v in range(n):
            bumped = list(c)
            bumped[v] += 1
            size = stabilize(g, bumped).avalanche_size
            run = _maximal_two_string(c, v)
            if 1 <= size <= n - 2 or 1 <= run <= n - 2:
                assert size == run
            if c[v] < 2:
                assert size == 0


@pytest.mark.parametrize("n", range(3, 9))
def test_fan_bijection(n):
    g = wheel_graph(n)
    recs = set(enumerate_recurrents(g))
    for m in range(1, n - 1):
        starting = {c for c in recs
                    if all(x == 2 for x in c[:m]) and c[m] != 2 and c[-1] != 2}
        fan = list(enumerate_recurrents(fan_graph(n - m)))
        assert len(starting) == len(fan) == fib(2 * (n - m))
        assert {(2,) * m + d for d in fan} == starting


def test_wheel_zero_fraction():
    assert wheel_zero_fraction(3) == Fraction(24, 3 * 16)
    assert float(wheel_zero_fraction(30)) == pytest.approx(1 - 5 ** -0.5, abs=1e-9)


def test_rooted_tree_validation():
    with pytest.raises(GraphError):
        RootedTree((-1, 2, 1))
    with pytest.raises(GraphError):
        RootedTree((0, 0))
    with pytest.raises(GraphError):
        RootedTree.from_edges(3, [(0, 1)])
    t = RootedTree.from_edges(4, [(0, 1), (1, 2), (1, 3)], root=1)
    assert t.parent == (1, -1, 1, 1) and t.root == 1
    with pytest.raises(GraphError):
        t.parents()


def test_tree_fixtures():
    assert tree_poly(RootedTree.from_parents([0])).to_text() == "x1"
    assert tree_poly(RootedTree.from_parents([0, 0])).to_text() == "x1 + x2"
    grafted = RootedTree.from_parents([3, 3, 0])
    assert tree_poly(grafted).to_text() == "x1^2*x2*x3 + x1*x2^2*x3 + x1*x2*x3"
    assert tree_poly(RootedTree((-1,))) == MultiPoly.zero(0)


def test_twin_trees_share_univariate():
    t1 = RootedTree.from_parents([0, 1, 2, 2, 0, 5, 5, 5, 5, 5, 10])
    t2 = RootedTree.from_parents([0, 1, 2, 3, 0, 5, 5, 5, 5, 5, 5])
    p1, p2 = tree_poly(t1), tree_poly(t2)
    assert univariate(p1) == univariate(p2)
    assert univariate(p1).to_text() == "x^10 + x^9 + 6*x^8 + 2*x^7 + x^4"
    assert p1 != p2
    assert p1 == tree_avalanche_polynomial(t1.to_graph())
    assert p2 == tree_avalanche_polynomial(t2.to_graph())


def test_all_rooted_trees_counts():
    for n in range(1, 7):
        trees = list(all_rooted_trees(n))
        assert len(trees) == len(set(trees)) == max(1, n ** (n - 2))
        assert all(t.root == 0 for t in trees)


@pytest.mark.parametrize("n", range(2, 7))
def test_tree_closed_form_full_enumeration(n):
    # the full recurrent scan, not the max shortcut
    for t in all_rooted_trees(n):
        g = t.to_graph()
        assert list(enumerate_recurrents(g)) == [tuple(d - 1 for d in g.degrees)]
        assert tree_poly(t) == avalanche_polynomial(g)


def test_tree_other_sink():
    r = random.Random(3)
    for _ in range(30):
        n = r.randint(2, 9)
        edges = [(v, r.randrange(v)) for v in range(1, n)]
        t = RootedTree.from_edges(n, edges, root=r.randrange(n))
        assert tree_poly(t) == tree_avalanche_polynomial(t.to_graph())


def test_random_trees_against_simulation():
    r = random.Random(8)
    for _ in range(40):
        t = RootedTree.from_parents(random_parents(r, r.randint(2, 14)))
        assert tree_poly(t) == tree_avalanche_polynomial(t.to_graph())


def test_tree_polys_are_injective_up_to_seven_vertices():
    seen = {}
    for n in range(1, 8):
        for t in all_rooted_trees(n):
            p = tree_poly(t)
            key = (n, tuple(p.sorted_terms()))
            assert key not in seen
            seen[key] = t
