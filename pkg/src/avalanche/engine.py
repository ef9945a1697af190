"""Sandpile dynamics: toppling, stabilization, Dhar's burning test, enumeration.

A sandpile is a tuple of grain counts over the non-sink vertices in compact
order (see :mod:`avalanche.graph`).
"""

from __future__ import annotations

import itertools
import math
import operator
import os
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import LimitExceeded, NotStableError
from .graph import Graph

Sandpile = tuple  # tuple[int, ...]

DEFAULT_LIMIT = 10 ** 8


@dataclass(frozen=True)
class StabilizationResult:
    stable: Sandpile
    topplings: tuple[int, ...]
    avalanche_size: int
    burst: int


def default_limit() -> int:
    env = os.environ.get("AVALANCHE_LIMIT")
    return int(env) if env else DEFAULT_LIMIT


def is_stable(g: Graph, c: Sequence[int]) -> bool:
    return all(x < d for x, d in zip(c, g.degrees))


def max_sandpile(g: Graph) -> Sandpile:
    return tuple(d - 1 for d in g.degrees)


def unit(g: Graph, i: int) -> Sandpile:
    """``1_v`` for the vertex with compact index ``i``."""
    return tuple(int(j == i) for j in range(g.n))


def stabilize(g: Graph, c: Sequence[int]) -> StabilizationResult:
    """Topple until stable.

    Worklist order; a popped vertex fires ``grains // degree`` times at once.
    The outcome does not depend on the order (abelian property).
    """
    grains = list(c)
    if len(grains) != g.n:
        raise ValueError(f"sandpile has {len(grains)} entries, graph has {g.n} non-sink vertices")
    if grains and min(grains) < 0:
        raise ValueError("negative grain count")
    deg = g.degrees
    nbrs = g.neighbors
    fired = [0] * g.n
    queued = list(map(operator.ge, grains, deg))
    todo = deque(itertools.compress(range(g.n), queued))
    pop, push = todo.popleft, todo.append
    while todo:
        i = pop()
        queued[i] = False
        k = grains[i] // deg[i]
        if not k:
            continue
        grains[i] -= k * deg[i]
        fired[i] += k
        for j, w in nbrs[i]:
            grains[j] += k * w
            if not queued[j] and grains[j] >= deg[j]:
                queued[j] = True
                push(j)
    burst = sum(map(operator.mul, fired, g.sink_weights))
    return StabilizationResult(tuple(grains), tuple(fired), sum(fired), burst)


def stable_add(g: Graph, a: Sequence[int], b: Sequence[int]) -> Sandpile:
    return stabilize(g, [x + y for x, y in zip(a, b)]).stable


def is_recurrent(g: Graph, c: Sequence[int]) -> bool:
    """Burning test: firing the sink onto ``c`` must topple every vertex once and return ``c``."""
    c = tuple(c)
    if not is_stable(g, c):
        raise NotStableError(f"recurrence is only defined for stable sandpiles, got {c}")
    res = stabilize(g, [x + u for x, u in zip(c, g.sink_weights)])
    return res.stable == c and all(f == 1 for f in res.topplings)


def state_count(g: Graph) -> int:
    return math.prod(g.degrees)


def enumerate_recurrents(g: Graph, limit: int | None = None,
                         first: int | None = None) -> Iterator[Sandpile]:
    """Yield every recurrent sandpile once, in lexicographic order.

    ``first`` pins the grain count of compact vertex 0, which splits the scan
    into independent shards whose concatenation is the full ordered output.
    """
    limit = default_limit() if limit is None else limit
    states = state_count(g)
    if states > limit:
        raise LimitExceeded(states, limit)
    ranges = [range(d) for d in g.degrees]
    if first is not None and ranges:
        ranges[0] = range(first, first + 1)
    for c in itertools.product(*ranges):
        if is_recurrent(g, c):
            yield c


_POWER = re.compile(r"^(\d)\^(\d+)$")


def parse_sandpile(text: str) -> Sandpile:
    """Parse ``1,0,1,1`` or the shorthand ``1^3 0 1^5`` (single-digit letters, powers)."""
    text = text.strip()
    if "," in text:
        return tuple(int(tok) for tok in text.split(","))
    out: list[int] = []
    for tok in text.split():
        m = _POWER.match(tok)
        if m:
            out.extend([int(m.group(1))] * int(m.group(2)))
        elif tok.isdigit():
            out.extend(int(ch) for ch in tok)
        else:
            raise ValueError(f"cannot parse sandpile token {tok!r}")
    return tuple(out)


def format_sandpile(c: Sequence[int]) -> str:
    return ",".join(str(x) for x in c)
