"""Independent reference implementations used by the tests.

None of these use the record graph or the fixpoint solvers of the package;
they work directly on plays and on explicit strategy enumeration.
"""
from __future__ import annotations

import itertools
import math
from collections import deque

INF = math.inf


# --- plays of a fixed Mealy strategy -----------------------------------------------------


def _product_succ(g, sigma):
    """Successor function of arena x memory, nodes ``(vertex, arrival state)``."""
    edges = g.arena.edges
    succ_v = {}
    for (u, v), w in edges.items():
        succ_v.setdefault(u, []).append((v, w))

    def succ(node):
        v, m = node
        m2 = sigma.update.get((m, v), m)
        if v in g.arena.player0:
            u = sigma.output[(m, v)]
            return [((u, m2), edges[(v, u)])]
        return [((u, m2), w) for u, w in succ_v[v]]

    return succ


def _reachable(start, succ):
    seen = {start}
    queue = deque([start])
    while queue:
        n = queue.popleft()
        for n2, _ in succ(n):
            if n2 not in seen:
                seen.add(n2)
                queue.append(n2)
    return seen


def _targets(g):
    return [g.target0, *g.targets1]


def _cycle_signatures(node, succ, targets, max_len):
    """``first-visit offsets`` of every closed walk of length <= max_len at ``node``.

    Offsets are weights from ``node``; ``None`` for targets the walk misses.
    """
    sigs = set()
    start = (node, 0, (None,) * len(targets))
    seen = {start}
    frontier = [start]
    for _ in range(max_len):
        nxt = []
        for cur, off, firsts in frontier:
            for n2, w in succ(cur):
                o2 = off + w
                f2 = tuple(f if f is not None or n2[0] not in T else o2
                           for f, T in zip(firsts, targets))
                if n2 == node:
                    sigs.add(f2)
                    continue
                st = (n2, o2, f2)
                if st not in seen:
                    seen.add(st)
                    nxt.append(st)
        frontier = nxt
    return sigs


def lasso_outcomes(g, sigma, B=0):
    """All ``(value, cost)`` pairs of consistent lassos, found by exhaustive search.

    Prefixes are explored up to ``(t + B + 3) * |V| * |M|`` steps and cycles up to
    ``|V| * |M|``; this covers every Pareto-optimal cost and a play of value
    above ``B`` for it when one exists.
    """
    succ = _product_succ(g, sigma)
    targets = _targets(g)
    v0 = g.arena.init
    init_node = (v0, sigma.init)
    nodes = _reachable(init_node, succ)
    n = len(g.arena.vertices) * len(sigma.states)
    depth = (g.dimension + B + 3) * n

    first = tuple(0 if v0 in T else None for T in targets)
    start = (init_node, 0, first)
    seen = {start}
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for node, w, firsts in frontier:
            for n2, ew in succ(node):
                w2 = w + ew
                f2 = tuple(f if f is not None or n2[0] not in T else w2
                           for f, T in zip(firsts, targets))
                st = (n2, w2, f2)
                if st not in seen:
                    seen.add(st)
                    nxt.append(st)
        frontier = nxt

    sig_cache = {}
    out = set()
    for node, w, firsts in seen:
        if node not in sig_cache:
            sig_cache[node] = _cycle_signatures(node, succ, targets, len(nodes))
        for sig in sig_cache[node]:
            vals = tuple(
                f if f is not None else (w + o if o is not None else INF)
                for f, o in zip(firsts, sig)
            )
            out.add((vals[0], vals[1:]))
    return out


def minimal_costs(costs):
    costs = set(costs)
    return {c for c in costs
            if not any(d != c and all(x <= y for x, y in zip(d, c)) for d in costs)}


def oracle_front(g, sigma, B=0):
    return minimal_costs(c for _, c in lasso_outcomes(g, sigma, B))


def oracle_is_solution(g, sigma, B):
    outcomes = lasso_outcomes(g, sigma, B)
    front = minimal_costs(c for _, c in outcomes)
    return all(val <= B for val, c in outcomes if c in front)


# --- zero-sum reach-or-safe games ----------------------------------------------------------


def _live(nodes, succ):
    alive = set(nodes)
    changed = True
    while changed:
        changed = False
        for n in list(alive):
            if not any(n2 in alive for n2 in succ(n)):
                alive.discard(n)
                changed = True
    return alive


def _spoiled_from(graph, fixed, R, S):
    """Nodes from which Player 1 can avoid ``R`` forever and visit a node outside ``S``.

    ``fixed`` maps Player-0 nodes to their chosen successor.
    """
    def succ(n):
        return [fixed[n]] if n in fixed else list(graph.succ[n])

    free = [n for n in graph.nodes if n not in R]
    free_set = set(free)
    live = _live(free, lambda n: [m for m in succ(n) if m in free_set])
    bad_seeds = {n for n in live if n not in S}
    # backward search inside the R-free part
    pred = {n: [] for n in free}
    for n in free:
        for m in succ(n):
            if m in free_set:
                pred[m].append(n)
    spoiled = set(bad_seeds)
    queue = deque(bad_seeds)
    while queue:
        n = queue.popleft()
        for p in pred[n]:
            if p not in spoiled:
                spoiled.add(p)
                queue.append(p)
    return spoiled


def oracle_reach_or_safe(graph, R, S):
    """Winning region by enumerating every memoryless Player-0 strategy."""
    R, S = set(R), set(S)
    p0 = [n for n in graph.nodes if graph.owner[n] == 0]
    won = set()
    for choice in itertools.product(*(graph.succ[n] for n in p0)):
        fixed = dict(zip(p0, choice))
        spoiled = _spoiled_from(graph, fixed, R, S)
        won |= set(graph.nodes) - spoiled
    return won


def strategy_is_winning(graph, strategy, region, R, S):
    fixed = {n: strategy[n] for n in region if graph.owner[n] == 0}
    spoiled = _spoiled_from(graph, fixed, set(R), set(S))
    return not (spoiled & set(region))
