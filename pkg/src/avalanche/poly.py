"""Sparse multivariate polynomials with exact integer coefficients."""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import PolynomialError


def _default_names(n):
    return [f"x{i + 1}" for i in range(n)]


class MultiPoly:
    """Immutable map from exponent vectors to nonzero integer coefficients."""

    __slots__ = ("n_vars", "_terms", "_hash")

    def __init__(self, n_vars: int, terms: Mapping[Sequence[int], int] | Iterable = ()):
        self.n_vars = n_vars
        acc: dict[tuple[int, ...], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coef in items:
            exp = tuple(exp)
            if len(exp) != n_vars:
                raise PolynomialError(f"exponent {exp} does not have {n_vars} entries")
            if any(e < 0 for e in exp):
                raise PolynomialError(f"negative exponent in {exp}")
            acc[exp] = acc.get(exp, 0) + int(coef)
        self._terms = {e: k for e, k in acc.items() if k}
        self._hash = None

    @classmethod
    def _raw(cls, n_vars, terms):
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.n_vars = n_vars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, n_vars: int) -> MultiPoly:
        return cls._raw(n_vars, {})

    @classmethod
    def constant(cls, n_vars: int, k: int) -> MultiPoly:
        return cls._raw(n_vars, {(0,) * n_vars: k} if k else {})

    @classmethod
    def monomial(cls, exp: Sequence[int], coef: int = 1) -> MultiPoly:
        return cls(len(exp), {tuple(exp): coef})

    @classmethod
    def variable(cls, n_vars: int, i: int) -> MultiPoly:
        return cls.monomial([int(j == i) for j in range(n_vars)])

    # -- access ----------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def coefficient(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def support(self) -> set[int]:
        """Indices of variables that occur in some term."""
        return {i for e in self._terms for i, x in enumerate(e) if x}

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Graded lexicographic order, highest first."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def evaluate(self, values: Sequence) -> object:
        if len(values) != self.n_vars:
            raise PolynomialError("wrong number of values")
        total = 0
        for exp, coef in self._terms.items():
            term = coef
            for v, e in zip(values, exp):
                if e:
                    term *= v ** e
            total += term
        return total

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            return MultiPoly.constant(self.n_vars, int(other))
        if other.n_vars != self.n_vars:
            raise PolynomialError(f"variable count mismatch: {self.n_vars} vs {other.n_vars}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for e, k in other._terms.items():
            s = out.get(e, 0) + k
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.n_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.n_vars, {e: -k for e, k in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k: int) -> MultiPoly:
        if not k:
            return MultiPoly.zero(self.n_vars)
        return MultiPoly._raw(self.n_vars, {e: c * k for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, k1 in self._terms.items():
            for e2, k2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + k1 * k2
        return MultiPoly._raw(self.n_vars, {e: k for e, k in out.items() if k})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        out = MultiPoly.constant(self.n_vars, 1)
        for _ in range(k):
            out = out * self
        return out

    def divide_monomial(self, exp: Sequence[int]) -> MultiPoly:
        """Exact division by ``x^exp``; raises if some term is not divisible."""
        exp = tuple(exp)
        out = {}
        for e, k in self._terms.items():
            q = tuple(a - b for a, b in zip(e, exp))
            if any(x < 0 for x in q):
                raise PolynomialError(f"term with exponent {e} is not divisible by {exp}")
            out[q] = k
        return MultiPoly._raw(self.n_vars, out)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == MultiPoly.constant(self.n_vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n_vars == other.n_vars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n_vars, frozenset(self._terms.items())))
        return self._hash

    # -- serialization ---------------------------------------------------

    def to_text(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else _default_names(self.n_vars)
        if not self._terms:
            return "0"
        parts = []
        for exp, coef in self.sorted_terms():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e]
            mag = abs(coef)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if coef > 0 else "-" + body)
            else:
                parts.append(("+ " if coef > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.n_vars}, {self.to_text()!r})"

    def to_json(self) -> dict:
        return {"vars": self.n_vars,
                "terms": [{"exp": list(e), "coef": str(k)} for e, k in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: Mapping) -> MultiPoly:
        try:
            n = int(data["vars"])
            return cls(n, [(t["exp"], int(t["coef"])) for t in data["terms"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise PolynomialError(f"malformed polynomial JSON: {exc}") from exc


class UniPoly:
    """Dense univariate polynomial, coefficient list indexed by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_dict(cls, counts: Mapping[int, int]) -> UniPoly:
        if not counts:
            return cls()
        c = [0] * (max(counts) + 1)
        for d, k in counts.items():
            c[d] += k
        return cls(c)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, d: int) -> int:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __add__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[i] + other[i] for i in range(n))

    def __mul__(self, other: UniPoly) -> UniPoly:
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def evaluate(self, x):
        total = 0
        for k in reversed(self.coeffs):
            total = total * x + k
        return total

    def as_dict(self) -> dict[int, int]:
        return {d: k for d, k in enumerate(self.coeffs) if k}

    def to_text(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            k = self.coeffs[d]
            if not k:
                continue
            x = "" if d == 0 else var if d == 1 else f"{var}^{d}"
            mag = abs(k)
            body = str(mag) if not x else x if mag == 1 else f"{mag}*{x}"
            if not parts:
                parts.append(body if k > 0 else "-" + body)
            else:
                parts.append(("+ " if k > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"UniPoly({self.to_text()!r})"


def univariate(p: MultiPoly) -> UniPoly:
    """Substitute the same ``x`` for every variable."""
    counts: dict[int, int] = {}
    for exp, k in p.terms.items():
        d = sum(exp)
        counts[d] = counts.get(d, 0) + k
    return UniPoly.from_dict(counts)


def specialize(p: MultiPoly, powers: Sequence[int]) -> UniPoly:
    """Substitute ``x^powers[i]`` for variable ``i`` (power 0 means 1)."""
    if len(powers) != p.n_vars:
        raise PolynomialError(f"{len(powers)} substitutions for {p.n_vars} variables")
    counts: dict[int, int] = {}
    for exp, k in p.terms.items():
        d = sum(e * w for e, w in zip(exp, powers))
        counts[d] = counts.get(d, 0) + k
    return UniPoly.from_dict(counts)


def burst_specialize(p: MultiPoly, g) -> UniPoly:
    """Send ``x_j`` to ``x^weight(v_j, sink)``, so degree counts grains lost to the sink."""
    if p.n_vars != g.n:
        raise PolynomialError(f"polynomial has {p.n_vars} variables, graph has {g.n} non-sink vertices")
    return specialize(p, g.sink_weights)


def elementary_symmetric(n: int, m: int) -> MultiPoly:
    if not 0 <= m <= n:
        raise PolynomialError(f"degree {m} out of range for {n} variables")
    terms = {}
    for subset in itertools.combinations(range(n), m):
        exp = [0] * n
        for i in subset:
            exp[i] = 1
        terms[tuple(exp)] = 1
    assert len(terms) == comb(n, m)
    return MultiPoly._raw(n, terms)


def cyclic_poly(n: int, m: int) -> MultiPoly:
    """Sum of the ``n`` cyclically consecutive degree-``m`` products; ``m == n`` gives one monomial."""
    if not 1 <= m <= n:
        raise PolynomialError(f"degree {m} out of range for {n} variables")
    if m == n:
        return MultiPoly._raw(n, {(1,) * n: 1})
    terms = {}
    for i in range(n):
        exp = [0] * n
        for j in range(i, i + m):
            exp[j % n] = 1
        terms[tuple(exp)] = 1
    return MultiPoly._raw(n, terms)


def support_components(p: MultiPoly) -> list[MultiPoly]:
    """Split ``p`` into summands on disjoint groups of variables.

    Two variables are linked when they share a term; each connected group
    gets the terms living on it.  Constant terms form their own summand,
    listed last; the others are ordered by smallest variable index.
    """
    parent = list(range(p.n_vars))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    terms = p.terms
    for exp in terms:
        used = [i for i, e in enumerate(exp) if e]
        for i in used[1:]:
            a, b = find(used[0]), find(i)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, dict] = {}
    const = {}
    for exp, k in terms.items():
        first = next((i for i, e in enumerate(exp) if e), None)
        if first is None:
            const[exp] = k
        else:
            groups.setdefault(find(first), {})[exp] = k
    out = [MultiPoly._raw(p.n_vars, groups[r]) for r in sorted(groups)]
    if const or not out:
        out.append(MultiPoly._raw(p.n_vars, const))
    return out
