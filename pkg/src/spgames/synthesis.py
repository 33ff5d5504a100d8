"""Witnesses, solution improvement and normalization, bounds, and brute-force search."""
from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice
from typing import Iterator, Sequence

from .analysis import (
    ExtendedGraph, ResourceError, analysis_alpha, build_extended, lasso_from_walk,
    live_subgraph, matches, verify,
)
from .cost import INF, PENDING, Lasso, ParetoFront, cost_le, format_cost, order_key
from .game import PLAYER0, PLAYER1, SPGame
from .strategy import MealyStrategy, self_at, splice, trim
from .zerosum import RecordGame, record_machine


class NotASolution(ValueError):
    """The operation requires a verified solution."""


# --- witnesses -----------------------------------------------------------------------------


def history_stats(g: SPGame, h: Sequence[str]):
    """Exact ``(value, cost)`` of a history (unvisited targets are ``INF``)."""
    value = INF
    cost = [INF] * g.dimension
    w = 0
    for k, v in enumerate(h):
        if k:
            w += g.arena.edges[(h[k - 1], v)]
        in0, ins = g.membership[v]
        if in0 and value == INF:
            value = w
        for i, b in enumerate(ins):
            if b and cost[i] == INF:
                cost[i] = w
    return value, tuple(cost)


def witness_length(g: SPGame, rho: Lasso) -> int:
    """Shortest ``|h|`` (in edges) of a prefix with the value and cost of ``rho``."""
    full = rho.unroll(len(rho.prefix) + len(rho.cycle))
    target = history_stats(g, full)
    for k in range(len(full)):
        if history_stats(g, full[: k + 1]) == target:
            return k
    return len(full) - 1


def _find_witness(H: ExtendedGraph, c: tuple) -> Lasso | None:
    # BFS over H visits histories by (length, lexicographic order); the first node
    # whose record already carries the final value and cost c, and which can go on
    # forever without visiting any further target, gives a witness of minimal len.
    parent = {H.init: None}
    queue = deque([H.init])
    live_cache = {}
    while queue:
        z = queue.popleft()
        rec = z[2]
        if matches(rec.m3, c):
            key = rec.m2 is PENDING
            if key not in live_cache:
                def keep(n, frozen_val=key):
                    return matches(n[2].m3, c) and (not frozen_val or n[2].m2 is PENDING)
                live_cache[key] = live_subgraph(H.nodes, H.succ, keep)
            alive = live_cache[key]
            if z in alive:
                path = []
                n = z
                while n is not None:
                    path.append(n)
                    n = parent[n]
                path.reverse()
                return lasso_from_walk(H.succ, path, alive)
        for n2 in H.succ[z]:
            if n2 not in parent:
                parent[n2] = z
                queue.append(n2)
    return None


@dataclass
class WitnessTree:
    witnesses: dict  # cost -> Lasso
    lengths: dict  # cost -> len(rho)
    regions: dict  # cost -> list[range] of prefix lengths
    branching_points: list
    deviations: list
    horizon: int = 0

    def costs(self) -> list:
        return sorted(self.witnesses, key=lambda c: tuple(order_key(x) for x in c))

    def unrolled(self, c, length: int | None = None) -> list[str]:
        return self.witnesses[c].unroll((length or self.horizon) + 1)


def extract_witnesses(g: SPGame, sigma: MealyStrategy, front: ParetoFront, B: int = 0, *,
                      H: ExtendedGraph | None = None) -> WitnessTree:
    if H is None:
        H = build_extended(g, sigma, B)
    costs = front.sorted()
    wit = {}
    for c in costs:
        rho = _find_witness(H, c)
        if rho is None:
            raise ValueError(f"no consistent play with cost {format_cost(c)}")
        wit[c] = rho
    lengths = {c: witness_length(g, rho) for c, rho in wit.items()}
    horizon = max((max(lengths[c], len(r.prefix)) + len(r.cycle) for c, r in wit.items()),
                  default=0) + 1
    plays = {c: tuple(r.unroll(horizon + 1)) for c, r in wit.items()}

    def wit_of(h):
        return frozenset(c for c in costs if plays[c][: len(h)] == h)

    regions = {}
    for c in costs:
        keys = []
        for k in range(lengths[c] + 1):
            h = plays[c][: k + 1]
            keys.append((history_stats(g, h), wit_of(h)))
        rs = []
        start = 0
        for k in range(1, len(keys) + 1):
            if k == len(keys) or keys[k] != keys[start]:
                rs.append(range(start, k))
                start = k
        regions[c] = rs

    a = g.arena
    branching = []
    deviations = []
    seen = set()
    for c in costs:
        for k in range(horizon):
            h = plays[c][: k + 1]
            if h in seen:
                continue
            seen.add(h)
            here = wit_of(h)
            nexts = {}
            for u, _ in a.successors[h[-1]]:
                nexts[u] = wit_of(h + (u,))
            if any(0 < len(s) < len(here) for s in nexts.values()):
                branching.append(h)
            if a.owner(h[-1]) == PLAYER1:
                for u, s in nexts.items():
                    if not s:
                        deviations.append(h + (u,))
    return WitnessTree(wit, lengths, regions, branching, deviations, horizon)


# --- improvement ---------------------------------------------------------------------------


def _require_solution(g, sigma, B):
    verdict = verify(g, sigma, B)
    if not verdict.is_solution:
        raise NotASolution("strategy is not a solution for this bound")
    return verdict


def find_eliminable_cycle(g: SPGame, tree: WitnessTree):
    """First ``(cost, m, n)`` meeting the cycle-elimination conditions, or ``None``."""
    for c in tree.costs():
        L = tree.lengths[c]
        rho = tree.unrolled(c, L)
        for m in range(L):
            for n in range(m + 1, L):
                if rho[m] != rho[n]:
                    continue
                if not any(m in r and n in r for r in tree.regions[c]):
                    continue
                val_m, _ = history_stats(g, rho[: m + 1])
                if val_m == INF and g.arena.path_weight(rho[m: n + 1]) != 0:
                    continue
                return c, m, n
    return None


def eliminate_cycle(g: SPGame, sigma: MealyStrategy, B: int) -> MealyStrategy | None:
    """One cycle-elimination step on a solution; ``None`` when nothing applies."""
    verdict = _require_solution(g, sigma, B)
    tree = extract_witnesses(g, sigma, verdict.front, B)
    found = find_eliminable_cycle(g, tree)
    if found is None:
        return None
    c, m, n = found
    rho = tree.unrolled(c, n)
    return trim(g, splice(sigma, g, rho[: m + 1], self_at(rho[: n + 1]))).relabeled()


def eliminate_cycles(g: SPGame, sigma: MealyStrategy, B: int, max_steps: int = 1000):
    """Apply :func:`eliminate_cycle` until no eligible cycle remains.

    Returns ``(strategy, steps)``.
    """
    steps = 0
    while steps < max_steps:
        nxt = eliminate_cycle(g, sigma, B)
        if nxt is None:
            return sigma, steps
        sigma = nxt
        steps += 1
    raise ResourceError(f"cycle elimination did not stabilize within {max_steps} steps")


def improves(new_front: ParetoFront, old_front: ParetoFront) -> bool:
    """Strategy preorder: every old cost is dominated-or-equalled by a new one."""
    return all(any(cost_le(c2, c) for c2 in new_front) for c in old_front)


# --- normalization -------------------------------------------------------------------------


def normalize_solution(g: SPGame, sigma: MealyStrategy, B: int) -> MealyStrategy:
    """Rebuild a solution as witness-lasso follower plus record-keyed punishing modes."""
    verdict = _require_solution(g, sigma, B)
    front = verdict.front
    alpha = analysis_alpha(g, sigma.size, B)
    a = g.arena
    t = g.dimension
    if set(front) == {(INF,) * t}:
        game = RecordGame(g, alpha, with_costs=False)
        start = (g.init, game.start_record((g.init,)))
        game.grow([start])
        win = game.solve(B, [])
        if start not in win.region:
            raise NotASolution("no value-bounded strategy from the initial vertex")
        return trim(g, record_machine(game, start, win)).relabeled()

    tree = extract_witnesses(g, sigma, front, B)
    lassos = [tree.witnesses[c] for c in tree.costs()]
    plen = [len(r.prefix) for r in lassos]
    total = [len(r.prefix) + len(r.cycle) for r in lassos]

    def at(i, k):
        return lassos[i].vertex_at(k)

    def nxt(i, k):
        return k + 1 if k + 1 < total[i] else plen[i]

    game = RecordGame(g, alpha)
    p0 = [v for v in a.vertices if a.owner(v) == PLAYER0]
    default = {v: a.successors[v][0][0] for v in p0}

    init = ("wit", frozenset((i, 0) for i in range(len(lassos))), None, None)
    wit_states = [init]
    index = {init: 0}
    trans = {}  # (state, x) -> (next state, chosen successor or None)
    choice_of = {init: None}
    starts = []
    queue = deque([init])
    while queue:
        s = queue.popleft()
        _, S, last, rec = s
        if last is None:
            xs = [g.init]
        elif a.owner(last) == PLAYER0:
            xs = [choice_of[s]]
        else:
            xs = [u for u, _ in a.successors[last]]
        for x in xs:
            if rec is None:
                rec_x = game.start_record((x,))
            else:
                rec_x = next(n[1] for n in game.successors((last, rec)) if n[0] == x)
            Sx = sorted((i, k) for (i, k) in S if at(i, k) == x)
            if Sx:
                S2 = frozenset((i, nxt(i, k)) for i, k in Sx)
                i, k = Sx[0]
                s2 = ("wit", S2, x, rec_x)
                choice = at(i, nxt(i, k)) if a.owner(x) == PLAYER0 else None
                trans[(s, x)] = (s2, choice)
                if s2 not in index:
                    index[s2] = len(wit_states)
                    wit_states.append(s2)
                    choice_of[s2] = choice
                    queue.append(s2)
            elif rec is not None and rec.m2 is not PENDING:
                trans[(s, x)] = (("free",), None)
            else:
                starts.append((x, rec_x))
                trans[(s, x)] = (("pun", (x, rec_x)), None)

    punish = {}
    pun_states = []
    if starts:
        game.grow(starts)
        win = game.solve(B, front)
        for st in starts:
            if st not in win.region:
                raise NotASolution(f"no punishing strategy after deviation at {st[0]}")
        seen = set()
        for st in starts:
            m = record_machine(game, st, win)
            for n in m.states[1:]:
                if n not in seen:
                    seen.add(n)
                    pun_states.append(n)
            punish.update({(("pun", n), v): ("pun", u) for (n, v), u in m.update.items()
                           if n != "start"})
            for (n, v), u in m.output.items():
                if n != "start":
                    punish[("out", ("pun", n), v)] = u
        win_strategy = win.strategy
    else:
        win_strategy = {}

    def pun_choice(node):
        return win_strategy.get(node, (default.get(node[0]), None))[0]

    states = list(wit_states) + [("free",)] + [("pun", n) for n in pun_states]
    update = {}
    output = {}
    for s in states:
        for v in p0:
            output[(s, v)] = default[v]
    for (s, x), (s2, choice) in trans.items():
        update[(s, x)] = s2
        if x in default:
            if choice is not None:
                output[(s, x)] = choice
            elif s2[0] == "pun":
                output[(s, x)] = pun_choice(s2[1])
    for key, u in punish.items():
        if key[0] == "out":
            output[(key[1], key[2])] = u
        else:
            update[key] = u
    machine = MealyStrategy(tuple(states), init, update, output)
    return trim(g, machine).relabeled()



# --- bounds --------------------------------------------------------------------------------


def _ceil_log2_pow(x: int, e: int) -> int:
    """``ceil(e * log2(x))`` for integers ``x >= 1``, exactly."""
    return (x ** e - 1).bit_length()


@lru_cache(maxsize=None)
def f_bound(B: int, t: int, N: int) -> int:
    """Bound on finite Pareto-optimal cost components of a bounded solution."""
    if t < 1:
        raise ValueError("dimension must be >= 1")
    if t == 1:
        return B + N
    f0 = f_bound(0, t - 1, N)
    return B + 2 ** t * (N * _ceil_log2_pow(f0 + B + 3, t) + 1 + f0) + 1 + f0


@dataclass
class BoundReport:
    B: int
    t: int
    N: int
    f_values: dict  # (B', t') -> F(B', t')
    c_bound: int
    alpha_recommendation: int

    def rows(self) -> list[tuple[int, int, int]]:
        return [(b, tt, f) for (b, tt), f in sorted(self.f_values.items())]

    def to_text(self) -> str:
        rows = [("B", "t", "F(B,t)")] + [tuple(map(str, r)) for r in self.rows()]
        widths = [max(len(r[i]) for r in rows) for i in range(3)]
        lines = ["  ".join(x.rjust(wd) for x, wd in zip(r, widths)) for r in rows]
        lines.append(f"c_bound({self.t}) = {self.c_bound}")
        lines.append(f"alpha = {self.alpha_recommendation}")
        return "\n".join(lines)

    def to_csv(self) -> str:
        return "\n".join(["B,t,F"] + [f"{b},{tt},{f}" for b, tt, f in self.rows()])


def bound_f(B: int, t: int, nV: int, W: int) -> BoundReport:
    if t < 1 or nV < 1:
        raise ValueError("need t >= 1 and nV >= 1")
    N = nV * W if W > 1 else nV
    table = {}
    for tt in range(1, t + 1):
        table[(0, tt)] = f_bound(0, tt, N)
        table[(B, tt)] = f_bound(B, tt, N)
    c_bound = (f_bound(0, t - 1, N) + B + 3) ** t if t >= 2 else 1
    return BoundReport(B, t, N, table, c_bound, table[(B, t)])


def min_leaf_depth(tree) -> int:
    """Smallest leaf depth of a tree given as nested lists of children."""
    queue = deque([(tree, 0)])
    while queue:
        node, d = queue.popleft()
        if not node:
            return d
        queue.extend((ch, d + 1) for ch in node)
    raise ValueError("empty tree")


def leaf_count(tree) -> int:
    return 1 if not tree else sum(leaf_count(ch) for ch in tree)


def max_unary_run(tree) -> int:
    """Longest run of consecutive single-child nodes along a branch."""
    best = 0
    stack = [(tree, 0)]
    while stack:
        node, run = stack.pop()
        run = run + 1 if len(node) == 1 else 0
        best = max(best, run)
        stack.extend((ch, run) for ch in node)
    return best


def leaf_depth_bound(n_leaves: int, ell: int) -> float:
    return ell * math.log2(n_leaves)


# --- bounded-memory search -----------------------------------------------------------------


def _relevant_vertices(g: SPGame):
    a = g.arena
    branching = {v for v in a.vertices if a.owner(v) == PLAYER0 and len(a.successors[v]) > 1}
    pred = {v: [] for v in a.vertices}
    for (u, v) in a.edges:
        pred[v].append(u)
    relevant = set()
    queue = deque(branching)
    for b in branching:
        for p in pred[b]:
            relevant.add(p)
    queue = deque(relevant)
    while queue:
        v = queue.popleft()
        for p in pred[v]:
            if p not in relevant:
                relevant.add(p)
                queue.append(p)
    return branching, relevant


def enumerate_machines(g: SPGame, size: int) -> Iterator[MealyStrategy]:
    """Mealy machines with exactly ``size`` used states, up to state renaming.

    Only entries that matter on the reachable product are enumerated: outputs at
    Player-0 vertices with several successors, and updates at vertices from which
    such a vertex can still be reached.  Every other entry takes its default
    (first successor, unchanged state).  New states are numbered in discovery order.
    """
    a = g.arena
    branching, relevant = _relevant_vertices(g)
    p0 = [v for v in a.vertices if a.owner(v) == PLAYER0]
    default = {v: a.successors[v][0][0] for v in p0}
    succs = {v: [u for u, _ in a.successors[v]] for v in a.vertices}

    def first_open(upd, out):
        start = (g.init, 0)
        seen = {start}
        queue = deque([start])
        while queue:
            v, m = queue.popleft()
            if v in branching and (m, v) not in out:
                return ("out", m, v)
            if v in relevant and (m, v) not in upd:
                return ("upd", m, v)
            m2 = upd.get((m, v), m)
            if a.owner(v) == PLAYER0:
                nx = [out.get((m, v), default[v])]
            else:
                nx = succs[v]
            for u in nx:
                if (u, m2) not in seen:
                    seen.add((u, m2))
                    queue.append((u, m2))
        return None

    def rec(upd, out, used):
        hole = first_open(upd, out)
        if hole is None:
            if used == size:
                yield _assemble(size, upd, out, p0, default)
            return
        kind, m, v = hole
        if kind == "out":
            for u in succs[v]:
                out[(m, v)] = u
                yield from rec(upd, out, used)
            del out[(m, v)]
        else:
            for m2 in range(min(used + 1, size)):
                upd[(m, v)] = m2
                yield from rec(upd, out, max(used, m2 + 1))
            del upd[(m, v)]

    yield from rec({}, {}, 1)


def _assemble(size, upd, out, p0, default) -> MealyStrategy:
    names = [f"s{i}" for i in range(size)]
    update = {(names[m], v): names[m2] for (m, v), m2 in upd.items()}
    output = {}
    for i in range(size):
        for v in p0:
            output[(names[i], v)] = out.get((i, v), default[v])
    return MealyStrategy(tuple(names), names[0], update, output)


def enumerate_candidates(g: SPGame, k: int) -> Iterator[MealyStrategy]:
    for s in range(1, k + 1):
        yield from enumerate_machines(g, s)


def count_candidates(g: SPGame, k: int, limit: int | None = None) -> int:
    it = enumerate_candidates(g, k)
    if limit is not None:
        it = islice(it, limit + 1)
    return sum(1 for _ in it)


def _is_solution(args) -> bool:
    g, sigma, B = args
    return verify(g, sigma, B).is_solution


@dataclass
class SearchResult:
    strategy: MealyStrategy | None
    candidates_checked: int


def brute_force_search(g: SPGame, B: int, k: int, *, jobs: int = 1,
                       budget: int | None = None, chunk: int = 64) -> SearchResult:
    """Try every (canonical) Mealy machine with at most ``k`` states, in order.

    A ``None`` strategy means no solution with memory <= k; larger memories are
    not explored.
    """
    if k < 1:
        raise ValueError("memory bound must be >= 1")
    if budget is not None:
        n = count_candidates(g, k, budget)
        if n > budget:
            raise ResourceError(f"more than {budget} candidate strategies with memory <= {k}")
    checked = 0
    it = enumerate_candidates(g, k)
    if jobs <= 1:
        for sigma in it:
            checked += 1
            if verify(g, sigma, B).is_solution:
                return SearchResult(sigma, checked)
        return SearchResult(None, checked)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        while True:
            batch = list(islice(it, chunk * jobs))
            if not batch:
                return SearchResult(None, checked)
            results = list(pool.map(_is_solution, [(g, s, B) for s in batch],
                                    chunksize=chunk))
            for sigma, ok in zip(batch, results):
                checked += 1
                if ok:
                    return SearchResult(sigma, checked)


def brute_force_solve(g: SPGame, B: int, k: int, **kw) -> MealyStrategy | None:
    return brute_force_search(g, B, k, **kw).strategy
