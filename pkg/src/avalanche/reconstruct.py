"""Recover a labeled rooted tree from its multivariate avalanche polynomial."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PolynomialError, TreePolynomialError
from .families import RootedTree, tree_poly
from .poly import MultiPoly, support_components


@dataclass
class ReconstructionTrace:
    steps: list = field(default_factory=list)  # (component, peeled variable indices)


def reconstruct_tree(p: MultiPoly, trace: ReconstructionTrace | None = None) -> RootedTree:
    """Tree with root 0 whose vertex ``k + 1`` carries variable ``k``.

    Each branch at a root is a support component ``X_S * (A + 1)``; dividing
    by ``X_S`` and dropping the 1 leaves ``A``, whose support misses exactly
    the child that starts the branch.  That child becomes the new root.
    """
    n = p.n_vars
    parent = [None] * (n + 1)
    parent[0] = -1
    one = MultiPoly.constant(n, 1)
    work = [(p, 0)]
    while work:
        q, root = work.pop()
        if not q:
            continue
        for comp in support_components(q):
            support = comp.support()
            if not support:
                raise TreePolynomialError("constant term cannot occur in a tree polynomial", comp)
            exp = [int(i in support) for i in range(n)]
            try:
                rest = comp.divide_monomial(exp) - one
            except PolynomialError as exc:
                raise TreePolynomialError(f"component {comp} is not a product over its support: {exc}",
                                          comp) from None
            heads = support - rest.support()
            if len(heads) != 1:
                raise TreePolynomialError(f"component {comp} does not single out a child", comp)
            child = heads.pop()
            if parent[child + 1] is not None:
                raise TreePolynomialError(f"variable x{child + 1} appears twice", comp)
            parent[child + 1] = root
            if trace is not None:
                trace.steps.append((comp, sorted(support)))
            work.append((rest, child + 1))
    missing = [v for v in range(1, n + 1) if parent[v] is None]
    if missing:
        raise TreePolynomialError(f"variables {['x%d' % v for v in missing]} never appear")
    try:
        tree = RootedTree(tuple(parent))
    except ValueError as exc:
        raise TreePolynomialError(str(exc)) from None
    if tree_poly(tree) != p:
        raise TreePolynomialError("reconstructed tree does not reproduce the polynomial")
    return tree


def validate_tree_poly(p: MultiPoly) -> bool:
    try:
        reconstruct_tree(p)
    except TreePolynomialError:
        return False
    return True
