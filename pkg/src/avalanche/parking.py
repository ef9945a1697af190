"""Parking functions and the avalanche decomposition on complete graphs.

Complete graphs follow :func:`avalanche.graph.complete_graph`: sink 0 and
``v_1 .. v_n`` at vertex ids ``1 .. n``, so compact index ``i`` is ``v_{i+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .engine import is_recurrent, stabilize
from .errors import NotRecurrentError, ParkingError
from .graph import complete_graph


def is_parking(p: Sequence[int]) -> bool:
    n = len(p)
    return all(0 <= a <= i for i, a in enumerate(sorted(p))) and all(0 <= a < n for a in p)


def recurrent_to_parking(c: Sequence[int]) -> tuple[int, ...]:
    """``max - c`` on ``K_{n+1}``; a parking function exactly when ``c`` is recurrent."""
    n = len(c)
    if any(not 0 <= x <= n - 1 for x in c):
        raise ParkingError(f"{tuple(c)} is not a stable sandpile on K_{n + 1}")
    return tuple(n - 1 - x for x in c)


def parking_to_recurrent(p: Sequence[int]) -> tuple[int, ...]:
    if not is_parking(p):
        raise ParkingError(f"{tuple(p)} is not a parking function")
    n = len(p)
    return tuple(n - 1 - x for x in p)


def concat_parking(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p`` followed by ``q`` shifted up by ``len(p)``."""
    if not is_parking(p) or not is_parking(q):
        raise ParkingError("both arguments must be parking functions")
    m = len(p)
    return tuple(p) + tuple(x + m for x in q)


def cayley(k: int) -> int:
    """Number of recurrents on ``K_k`` (``k^(k-2)``, and 1 for ``K_1``)."""
    return 1 if k <= 2 else k ** (k - 2)


@dataclass(frozen=True)
class PhiImage:
    vertex: int            # v_i, as a vertex id
    J: tuple[int, ...]     # other toppled vertices, ascending ids
    c1: tuple[int, ...]    # sandpile on K_m, entries follow J
    c2: tuple[int, ...]    # sandpile on K_{n-m+1}, untoppled vertices ascending

    @property
    def n(self) -> int:
        return 1 + len(self.J) + len(self.c2)

    @property
    def m(self) -> int:
        return 1 + len(self.J)

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "J": list(self.J),
                "c1": list(self.c1), "c2": list(self.c2)}


def phi(c: Sequence[int], v: int) -> PhiImage:
    """Split the avalanche of ``c + 1_{v}`` on ``K_{n+1}`` (``v`` in ``1..n``)."""
    c = tuple(c)
    n = len(c)
    g = complete_graph(n + 1)
    if not is_recurrent(g, c):
        raise NotRecurrentError(f"{c} is not recurrent on K_{n + 1}")
    if not 1 <= v <= n:
        raise ValueError(f"vertex {v} is not one of v_1..v_{n}")
    bumped = list(c)
    bumped[v - 1] += 1
    fired = stabilize(g, bumped).topplings
    m = sum(fired)
    if m == 0:
        raise ValueError(f"adding a grain at v_{v} causes no avalanche")
    shift = n - m + 1
    J = tuple(i + 1 for i in range(n) if fired[i] and i + 1 != v)
    c1 = tuple(c[w - 1] - shift for w in J)
    c2 = tuple(c[i] for i in range(n) if not fired[i])
    return PhiImage(v, J, c1, c2)


def phi_inverse(img: PhiImage) -> tuple[tuple[int, ...], int]:
    n, m = img.n, img.m
    if len(img.c1) != m - 1:
        raise ValueError("c1 must have one entry per vertex of J")
    shift = n - m + 1
    c = [None] * n
    c[img.vertex - 1] = n - 1
    for w, x in zip(img.J, img.c1):
        c[w - 1] = x + shift
    rest = iter(img.c2)
    for i in range(n):
        if c[i] is None:
            c[i] = next(rest)
    return tuple(c), img.vertex
