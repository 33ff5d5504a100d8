"""Pareto front of a fixed leader strategy and the solution check.

Both rest on the record-extended graph H: the strategy product annotated with
the truncated record ``(weight, value, cost)`` of the current history.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cost import (
    INF, PENDING, TOP, Lasso, ParetoFront, Record, eval_lasso, finalize, format_cost,
    format_value, has_top, initial_record, pareto_min, record_step,
)
from .game import SPGame
from .strategy import MealyStrategy, ProductGraph, product

#: records use Python ints, but larger thresholds are refused
ALPHA_LIMIT = 2**62
DEFAULT_MAX_NODES = 5_000_000


class ResourceError(RuntimeError):
    """An instance exceeds a configured size budget."""


def analysis_alpha(g: SPGame, memory_size: int, B: int) -> int:
    alpha = max(B, len(g.vertices) * memory_size * g.dimension * g.arena.max_weight)
    if alpha > ALPHA_LIMIT:
        raise ResourceError(f"truncation threshold {alpha} exceeds the integer budget")
    return alpha


def reach_sets(nodes, succ, vertex_of, targets) -> list[set]:
    """For each target, the nodes with a path of length >= 1 into it."""
    pred: dict = {n: [] for n in nodes}
    for n in nodes:
        for n2 in succ(n):
            pred[n2].append(n)
    out = []
    for T in targets:
        hit = {n for n in nodes if vertex_of(n) in T}
        seen: set = set()
        queue = deque()
        for n in hit:
            for p in pred[n]:
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        while queue:
            n = queue.popleft()
            for p in pred[n]:
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        out.append(seen)
    return out


def pending_live(rec: Record, node, reach: Sequence[set]) -> bool:
    """Can some still-pending component of ``rec`` be set in the future?"""
    if rec.m2 is PENDING and node in reach[0]:
        return True
    return any(x is PENDING and node in reach[i + 1] for i, x in enumerate(rec.m3))


def advance(rec: Record, weight: int, memberships, live: bool) -> Record:
    r2 = record_step(rec, weight, memberships)
    # the weight is irrelevant once no pending component can still be set
    if not live and r2.m1 != rec.m1:
        r2 = r2._replace(m1=rec.m1)
    return r2


@dataclass
class ExtendedGraph:
    """Reachable part of H; nodes are ``(vertex, memory state, Record)``."""

    init: tuple
    nodes: list
    succ: dict
    alpha: int
    product: ProductGraph = field(repr=False)

    def __len__(self):
        return len(self.nodes)


def build_extended(g: SPGame, sigma: MealyStrategy, B: int, *, alpha: int | None = None,
                   max_nodes: int = DEFAULT_MAX_NODES) -> ExtendedGraph:
    if alpha is None:
        alpha = analysis_alpha(g, sigma.size, B)
    p = product(g, sigma)
    reach = reach_sets(p.nodes, lambda n: [n2 for n2, _ in p.succ[n]], lambda n: n[0],
                       (g.target0, *g.targets1))
    memb = g.membership
    v0, s0 = p.init
    init = (v0, s0, initial_record(g, v0, alpha))
    nodes = [init]
    succ: dict = {}
    seen = {init}
    queue = deque([init])
    while queue:
        node = queue.popleft()
        v, s, rec = node
        live = pending_live(rec, (v, s), reach)
        out = []
        for (u, s2), w in p.succ[(v, s)]:
            n2 = (u, s2, advance(rec, w, memb[u], live))
            out.append(n2)
            if n2 not in seen:
                seen.add(n2)
                nodes.append(n2)
                queue.append(n2)
                if len(nodes) > max_nodes:
                    raise ResourceError(
                        f"extended graph exceeds {max_nodes} nodes (alpha={alpha})")
        succ[node] = tuple(out)
    return ExtendedGraph(init, nodes, succ, alpha, p)


def compute_pareto(g: SPGame, sigma: MealyStrategy, B: int = 0, *,
                   H: ExtendedGraph | None = None) -> ParetoFront:
    """The Pareto-optimal costs among plays consistent with ``sigma``."""
    if H is None:
        H = build_extended(g, sigma, B)
    costs = set()
    for _, _, rec in H.nodes:
        c = finalize(rec)[1]
        if not has_top(c):
            costs.add(c)
    return pareto_min(costs)


@dataclass(frozen=True)
class Counterexample:
    lasso: Lasso
    cost: tuple
    value: object

    def to_dict(self) -> dict:
        return {
            "prefix": list(self.lasso.prefix),
            "cycle": list(self.lasso.cycle),
            "cost": format_cost(self.cost),
            "value": format_value(self.value),
        }


@dataclass(frozen=True)
class Verdict:
    is_solution: bool
    front: ParetoFront
    counterexample: Counterexample | None = None

    def to_dict(self) -> dict:
        return {
            "solution": self.is_solution,
            "front": [format_cost(c) for c in self.front.sorted()],
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
        }


def live_subgraph(nodes, succ: Mapping, keep) -> set:
    """Largest subset of ``keep`` in which every node has a successor."""
    alive = {n for n in nodes if keep(n)}
    count = {n: sum(1 for n2 in succ[n] if n2 in alive) for n in alive}
    pred: dict = {n: [] for n in alive}
    for n in alive:
        for n2 in succ[n]:
            if n2 in alive:
                pred[n2].append(n)
    queue = deque(n for n in alive if count[n] == 0)
    while queue:
        n = queue.popleft()
        if n not in alive:
            continue
        alive.discard(n)
        for p in pred[n]:
            if p in alive:
                count[p] -= 1
                if count[p] == 0:
                    queue.append(p)
    return alive


def matches(m3: tuple, c: tuple) -> bool:
    return all((x is PENDING) if y == INF else (x == y and x is not TOP)
               for x, y in zip(m3, c))


def lasso_from_walk(H_succ: Mapping, path: list, allowed) -> Lasso:
    """Extend a path of H nodes until it closes a cycle inside ``allowed``."""
    pos = {n: i for i, n in enumerate(path)}
    walk = list(path)
    while True:
        n = walk[-1]
        nxt = next(n2 for n2 in H_succ[n] if n2 in allowed)
        if nxt in pos:
            j = pos[nxt]
            break
        pos[nxt] = len(walk)
        walk.append(nxt)
    verts = [n[0] for n in walk]
    return Lasso(tuple(verts[:j]), tuple(verts[j:])).normalized()


def verify(g: SPGame, sigma: MealyStrategy, B: int, *, H: ExtendedGraph | None = None) -> Verdict:
    """Decide whether ``sigma`` is a solution for bound ``B``."""
    if H is None:
        H = build_extended(g, sigma, B)
    front = compute_pareto(g, sigma, B, H=H)
    if not front:
        return Verdict(True, front)

    def keep(n):
        m2 = n[2].m2
        return not (isinstance(m2, int) and m2 <= B)

    alive = live_subgraph(H.nodes, H.succ, keep)
    if H.init not in alive:
        return Verdict(True, front)
    targets = front.sorted()
    parent = {H.init: None}
    queue = deque([H.init])
    hit = None
    while queue:
        n = queue.popleft()
        if any(matches(n[2].m3, c) for c in targets):
            hit = n
            break
        for n2 in H.succ[n]:
            if n2 in alive and n2 not in parent:
                parent[n2] = n
                queue.append(n2)
    if hit is None:
        return Verdict(True, front)
    path = []
    n = hit
    while n is not None:
        path.append(n)
        n = parent[n]
    path.reverse()
    lasso = lasso_from_walk(H.succ, path, alive)
    value, cost = eval_lasso(g, lasso)
    return Verdict(False, front, Counterexample(lasso, cost, value))
