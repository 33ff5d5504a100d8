"""Costs, values, Pareto fronts and truncated history records.

Cost components live in N u {inf}.  Records additionally use two markers:
``PENDING`` (target not visited yet) and ``TOP`` (visited, but at a weight
beyond the truncation threshold).  For comparisons the order is
``finite < TOP < INF``; ``PENDING`` compares like ``INF``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

from .game import GameError, SPGame

INF = math.inf


class _Marker:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return self.name


TOP = _Marker("TOP")
PENDING = _Marker("PENDING")


def order_key(x) -> tuple[int, int]:
    if x is TOP:
        return (1, 0)
    if x is PENDING or x == INF:
        return (2, 0)
    return (0, x)


def leq(a, b) -> bool:
    return order_key(a) <= order_key(b)


def format_value(x) -> str:
    if x is TOP:
        return "top"
    if x is PENDING or x == INF:
        return "inf"
    return str(int(x))


def format_cost(c: Sequence) -> str:
    return "(" + ",".join(format_value(x) for x in c) + ")"


def parse_value(s: str):
    s = s.strip()
    if s == "inf":
        return INF
    if s == "top":
        return TOP
    return int(s)


def parse_cost(s: str) -> tuple:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"malformed cost vector {s!r}")
    return tuple(parse_value(x) for x in s[1:-1].split(","))


@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic play ``prefix . cycle^omega``."""

    prefix: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("lasso cycle must be non-empty")

    def unroll(self, length: int) -> list[str]:
        """The first ``length`` vertices of the play."""
        out = list(self.prefix[:length])
        while len(out) < length:
            out.extend(self.cycle[: length - len(out)])
        return out

    def vertex_at(self, k: int) -> str:
        p = len(self.prefix)
        return self.prefix[k] if k < p else self.cycle[(k - p) % len(self.cycle)]

    def check(self, g: SPGame, start: str | None = None) -> None:
        seq = [*self.prefix, *self.cycle, self.cycle[0]]
        first = start if start is not None else g.init
        if seq[0] != first:
            raise GameError(f"lasso must start at {first}")
        g.arena.check_path(seq)

    def normalized(self) -> "Lasso":
        """Same play with the shortest prefix and a primitive cycle."""
        prefix, cycle = list(self.prefix), list(self.cycle)
        n = len(cycle)
        for d in range(1, n + 1):
            if n % d == 0 and cycle == cycle[:d] * (n // d):
                cycle = cycle[:d]
                break
        while prefix and prefix[-1] == cycle[-1]:
            cycle = [prefix.pop()] + cycle[:-1]
        return Lasso(tuple(prefix), tuple(cycle))

    def __str__(self):
        return " ".join(self.prefix) + " (" + " ".join(self.cycle) + ")^w"


def eval_lasso(g: SPGame, rho: Lasso, start: str | None = None):
    """Return ``(value, cost)`` of the play ``rho`` in ``g``."""
    rho.check(g, start)
    t = g.dimension
    value = INF
    cost = [INF] * t
    seq = [*rho.prefix, *rho.cycle]
    weight = 0
    for k, v in enumerate(seq):
        if k:
            weight += g.arena.edges[(seq[k - 1], v)]
        in0, ins = g.membership[v]
        if in0 and value == INF:
            value = weight
        for i in range(t):
            if ins[i] and cost[i] == INF:
                cost[i] = weight
    return value, tuple(cost)


class Dominance(Enum):
    EQUAL = "equal"
    A_BELOW = "a_below"
    B_BELOW = "b_below"
    INCOMPARABLE = "incomparable"


def _check_dims(a, b):
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")


def dominates(a: Sequence, b: Sequence) -> Dominance:
    """Classify two cost vectors under the componentwise order."""
    _check_dims(a, b)
    a_le = all(leq(x, y) for x, y in zip(a, b))
    b_le = all(leq(y, x) for x, y in zip(a, b))
    if a_le and b_le:
        return Dominance.EQUAL
    if a_le:
        return Dominance.A_BELOW
    if b_le:
        return Dominance.B_BELOW
    return Dominance.INCOMPARABLE


def cost_le(a: Sequence, b: Sequence) -> bool:
    _check_dims(a, b)
    return all(leq(x, y) for x, y in zip(a, b))


def cost_lt(a: Sequence, b: Sequence) -> bool:
    return cost_le(a, b) and tuple(map(order_key, a)) != tuple(map(order_key, b))


def _canon(c):
    return tuple(INF if (x is PENDING or x == INF) else x for x in c)


class ParetoFront(frozenset):
    """An antichain of cost vectors."""

    def sorted(self) -> list[tuple]:
        return sorted(self, key=lambda c: tuple(order_key(x) for x in c))

    def __str__(self):
        return " ".join(format_cost(c) for c in self.sorted())

    def __repr__(self):
        return f"ParetoFront({{{', '.join(format_cost(c) for c in self.sorted())}}})"


def pareto_min(costs: Iterable[Sequence]) -> ParetoFront:
    """The minimal elements of ``costs``; an empty input gives an empty front."""
    uniq = sorted({_canon(c) for c in costs}, key=lambda c: tuple(order_key(x) for x in c))
    front: list[tuple] = []
    # lexicographic order: an element can only be dominated by an earlier one
    for c in uniq:
        if not any(cost_le(f, c) for f in front):
            front.append(c)
    return ParetoFront(front)


class Record(NamedTuple):
    """Truncated ``(weight, value, cost)`` annotation of a history."""

    m1: object
    m2: object
    m3: tuple
    alpha: int


def _truncate(x, alpha):
    if x is TOP or x > alpha:
        return TOP
    return x


def initial_record(g: SPGame, v: str, alpha: int) -> Record:
    in0, ins = g.membership[v]
    return Record(0, 0 if in0 else PENDING, tuple(0 if b else PENDING for b in ins), alpha)


def record_step(r: Record, edge_weight: int, dest_memberships) -> Record:
    in0, ins = dest_memberships
    m1 = r.m1
    m1 = TOP if m1 is TOP else _truncate(m1 + edge_weight, r.alpha)
    m2 = m1 if (in0 and r.m2 is PENDING) else r.m2
    m3 = tuple(m1 if (b and x is PENDING) else x for b, x in zip(ins, r.m3))
    return Record(m1, m2, m3, r.alpha)


def finalize(r: Record):
    """Map pending components to ``INF``; ``TOP`` is kept."""
    fin = lambda x: INF if x is PENDING else x
    return fin(r.m2), tuple(fin(x) for x in r.m3)


def has_top(c: Sequence) -> bool:
    return any(x is TOP for x in c)
