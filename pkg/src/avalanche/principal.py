"""Principal avalanches and the multivariate avalanche polynomial by simulation."""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .engine import (Sandpile, default_limit, enumerate_recurrents, is_recurrent, max_sandpile,
                     stabilize, state_count)
from .errors import LimitExceeded, NotRecurrentError
from .graph import Graph, grid_graph
from .poly import MultiPoly, UniPoly, burst_specialize, univariate


@dataclass(frozen=True)
class AvalancheRecord:
    recurrent: Sandpile
    vertex: int  # vertex id in the graph, not the compact index
    topplings: tuple[int, ...]
    size: int
    burst: int

    def to_json(self) -> dict:
        return {"recurrent": list(self.recurrent), "vertex": self.vertex,
                "topplings": list(self.topplings), "size": self.size, "burst": self.burst}


def _principal(g: Graph, c, i: int):
    bumped = list(c)
    bumped[i] += 1
    return stabilize(g, bumped)


def avalanche_monomial(g: Graph, c, v: int) -> MultiPoly:
    """``x^nu`` where ``nu`` is the toppling vector of ``c + 1_v`` (``v`` a vertex id)."""
    c = tuple(c)
    if not is_recurrent(g, c):
        raise NotRecurrentError(f"{c} is not recurrent")
    if v == g.sink or v not in g.index:
        raise ValueError(f"{v} is not a non-sink vertex")
    return MultiPoly.monomial(_principal(g, c, g.index[v]).topplings)


def avalanche_records(g: Graph, limit: int | None = None) -> Iterator[AvalancheRecord]:
    for c in enumerate_recurrents(g, limit):
        for i, v in enumerate(g.nonsink):
            res = _principal(g, c, i)
            yield AvalancheRecord(c, v, res.topplings, res.avalanche_size, res.burst)


def _shard(g: Graph, limit, first) -> dict:
    acc: Counter = Counter()
    for c in enumerate_recurrents(g, limit, first=first):
        for i in range(g.n):
            acc[_principal(g, c, i).topplings] += 1
    return acc


def avalanche_polynomial(g: Graph, limit: int | None = None, workers: int = 1) -> MultiPoly:
    """Sum of the avalanche monomials over all recurrents and all non-sink vertices.

    With ``workers > 1`` the recurrent scan is split on the grain count of the
    first non-sink vertex and the partial sums are merged.
    """
    if g.n == 0:
        return MultiPoly.zero(0)
    if workers <= 1:
        acc = _shard(g, limit, None)
    else:
        # run the guard before forking
        limit = default_limit() if limit is None else limit
        if state_count(g) > limit:
            raise LimitExceeded(state_count(g), limit)
        acc = Counter()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_shard, g, limit, k) for k in range(g.degrees[0])]
            for f in futures:
                acc.update(f.result())
    return MultiPoly._raw(g.n, dict(acc))


def tree_avalanche_polynomial(g: Graph) -> MultiPoly:
    """Simulation shortcut for graphs known to have ``max`` as their only recurrent."""
    c = max_sandpile(g)
    acc: Counter = Counter()
    for i in range(g.n):
        acc[_principal(g, c, i).topplings] += 1
    return MultiPoly._raw(g.n, dict(acc))


def size_distribution(g: Graph, limit: int | None = None, poly: MultiPoly | None = None) -> dict[int, int]:
    """``{m: number of principal avalanches of size m}``."""
    p = avalanche_polynomial(g, limit) if poly is None else poly
    return univariate(p).as_dict()


def burst_distribution(g: Graph, limit: int | None = None, poly: MultiPoly | None = None) -> UniPoly:
    p = avalanche_polynomial(g, limit) if poly is None else poly
    return burst_specialize(p, g)


# -- sandpile on the square grid --------------------------------------------

PRNG_NAME = "PCG64 (numpy), raw 64-bit outputs reduced by rejection sampling"


def _uniform_cells(seed: int, cells: int, count: int) -> list[int]:
    # rejection keeps the draw unbiased; only the raw PCG64 stream is used, so
    # the sequence is fixed by the algorithm rather than by numpy's samplers
    bits = np.random.PCG64(seed)
    bound = (1 << 64) - ((1 << 64) % cells)
    out: list[int] = []
    while len(out) < count:
        raw = bits.random_raw(count - len(out) + 16)
        for x in raw.tolist():
            if x < bound:
                out.append(x % cells)
                if len(out) == count:
                    break
    return out


def grid_experiment(rows: int, cols: int, drops: int, seed: int = 0) -> dict[int, int]:
    """Drop grains on uniformly random cells of ``max`` and histogram the avalanche sizes.

    Size counts topplings, so a cell that fires twice counts twice.
    """
    g = grid_graph(rows, cols)
    c = list(max_sandpile(g))
    hist: Counter = Counter()
    for cell in _uniform_cells(seed, g.n, drops):
        c[cell] += 1
        res = stabilize(g, c)
        c = list(res.stable)
        hist[res.avalanche_size] += 1
    return dict(sorted(hist.items()))


def powerlaw_slope(hist: dict[int, int]) -> float | None:
    """Least-squares slope of log(count) against log(size) over nonzero sizes (reporting only)."""
    pts = [(math.log(s), math.log(k)) for s, k in hist.items() if s > 0 and k > 0]
    if len(pts) < 2:
        return None
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    sxx = sum((x - mx) ** 2 for x, _ in pts)
    if sxx == 0:
        return None
    return sum((x - mx) * (y - my) for x, y in pts) / sxx
