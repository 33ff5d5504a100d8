"""Zero-sum reachability / safety solving and punishing strategies."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Collection, Hashable, Iterable, Mapping, Sequence

from .analysis import analysis_alpha, advance, pending_live, reach_sets
from .cost import PENDING, ParetoFront, Record, cost_lt, finalize, initial_record, record_step
from .game import PLAYER0, PLAYER1, GameError, SPGame
from .strategy import MealyStrategy, simulate

Node = Hashable


@dataclass
class TwoPlayerGraph:
    nodes: list
    owner: Mapping[Node, int]
    succ: Mapping[Node, tuple]
    labels: Mapping[Node, object] = field(default_factory=dict)

    def __post_init__(self):
        for n in self.nodes:
            if not self.succ.get(n):
                raise GameError(f"node {n!r} has no successor")

    @classmethod
    def from_arena(cls, g: SPGame) -> "TwoPlayerGraph":
        a = g.arena
        return cls(list(a.vertices), {v: a.owner(v) for v in a.vertices},
                   {v: tuple(u for u, _ in a.successors[v]) for v in a.vertices})

    def predecessors(self) -> dict:
        pred: dict = {n: [] for n in self.nodes}
        for n in self.nodes:
            for n2 in self.succ[n]:
                pred[n2].append(n)
        return pred


@dataclass
class WinningResult:
    region: set
    strategy: dict
    rank: dict = field(default_factory=dict)


def attractor(g: TwoPlayerGraph, target: Iterable[Node], for_player: int = PLAYER0,
              *, within: Collection[Node] | None = None) -> WinningResult:
    """Nodes from which ``for_player`` can force a visit to ``target``.

    ``within`` optionally restricts the arena (moves leaving it are ignored and
    the sub-arena is assumed to be closed for the opponent by the caller).
    """
    pred = g.predecessors()
    inside = (lambda n: True) if within is None else (lambda n: n in within)
    region = set()
    rank = {}
    strategy = {}
    queue = deque()
    for n in g.nodes:
        if n in target and inside(n):
            region.add(n)
            rank[n] = 0
            queue.append(n)
    count = {n: sum(1 for n2 in g.succ[n] if inside(n2)) for n in g.nodes if inside(n)}
    while queue:
        n = queue.popleft()
        for p in pred[n]:
            if p in region or not inside(p):
                continue
            if g.owner[p] == for_player:
                region.add(p)
                rank[p] = rank[n] + 1
                strategy[p] = n
                queue.append(p)
            else:
                count[p] -= 1
                if count[p] == 0:
                    region.add(p)
                    rank[p] = rank[n] + 1
                    queue.append(p)
    return WinningResult(region, strategy, rank)


def cpre(g: TwoPlayerGraph, Z: set, player: int = PLAYER0) -> set:
    """Controlled predecessors of ``Z`` for ``player``."""
    out = set()
    for n in g.nodes:
        s = g.succ[n]
        if g.owner[n] == player:
            if any(n2 in Z for n2 in s):
                out.add(n)
        elif all(n2 in Z for n2 in s):
            out.add(n)
    return out


def solve_reach_or_safe(g: TwoPlayerGraph, R: Iterable[Node], S: Iterable[Node]) -> WinningResult:
    """Player 0 wins plays that visit ``R`` or stay in ``S`` forever."""
    R, S = set(R), set(S)
    attr = attractor(g, R, PLAYER0)
    A = attr.region
    Z = set(g.nodes)
    while True:
        Z2 = A | (S & cpre(g, Z, PLAYER0))
        if Z2 == Z:
            break
        Z = Z2
    strategy = {}
    for n in g.nodes:
        if n not in Z or g.owner[n] != PLAYER0:
            continue
        if n in attr.strategy:
            strategy[n] = attr.strategy[n]
        elif n in A:
            strategy[n] = g.succ[n][0]
        else:
            strategy[n] = next(n2 for n2 in g.succ[n] if n2 in Z)
    return WinningResult(Z, strategy, attr.rank)


# --- record games --------------------------------------------------------------------------


def record_of(g: SPGame, h: Sequence[str], alpha: int) -> Record:
    """Truncated record of the history ``h``."""
    r = initial_record(g, h[0], alpha)
    for u, v in zip(h, h[1:]):
        r = record_step(r, g.arena.edges[(u, v)], g.membership[v])
    return r


class RecordGame:
    """Arena x records, both players moving, grown on demand from start nodes."""

    def __init__(self, g: SPGame, alpha: int, *, with_costs: bool = True):
        self.g = g
        self.alpha = alpha
        self.with_costs = with_costs
        a = g.arena
        targets = (g.target0, *g.targets1) if with_costs else (g.target0,)
        self.reach = reach_sets(a.vertices, lambda v: [u for u, _ in a.successors[v]],
                                lambda v: v, targets)
        self.succ: dict = {}
        self.nodes: list = []

    def start_record(self, h: Sequence[str]) -> Record:
        r = record_of(self.g, h, self.alpha)
        return r if self.with_costs else r._replace(m3=())

    def _memb(self, v):
        in0, ins = self.g.membership[v]
        return (in0, ins) if self.with_costs else (in0, ())

    def successors(self, node) -> tuple:
        v, rec = node
        live = pending_live(rec, v, self.reach)
        return tuple((u, advance(rec, w, self._memb(u), live))
                     for u, w in self.g.arena.successors[v])

    def grow(self, starts: Iterable) -> None:
        queue = deque(n for n in starts if n not in self.succ)
        for n in queue:
            self.succ[n] = None
        self.nodes.extend(queue)
        while queue:
            n = queue.popleft()
            out = self.successors(n)
            self.succ[n] = out
            for n2 in out:
                if n2 not in self.succ:
                    self.succ[n2] = None
                    self.nodes.append(n2)
                    queue.append(n2)

    def graph(self) -> TwoPlayerGraph:
        a = self.g.arena
        return TwoPlayerGraph(list(self.nodes), {n: a.owner(n[0]) for n in self.nodes},
                              dict(self.succ))

    def solve(self, B: int, front: Iterable[tuple]) -> WinningResult:
        front = list(front)
        R = [n for n in self.nodes if isinstance(n[1].m2, int) and n[1].m2 <= B]
        S = [n for n in self.nodes
             if any(cost_lt(c, finalize(n[1])[1]) for c in front)] if self.with_costs else []
        return solve_reach_or_safe(self.graph(), R, S)


def first_successor_strategy(g: SPGame) -> MealyStrategy:
    a = g.arena
    out = {("s0", v): a.successors[v][0][0] for v in a.vertices if a.owner(v) == PLAYER0}
    return MealyStrategy(("s0",), "s0", {}, out)


def record_machine(game: RecordGame, start, win: WinningResult) -> MealyStrategy:
    """Mealy machine playing the memoryless record-game strategy from ``start``.

    States are record-game nodes ``(vertex, record)`` plus ``"start"``; the machine
    arrives at ``start[0]`` in state ``"start"``.
    """
    g = game.g
    a = g.arena
    p0 = [v for v in a.vertices if a.owner(v) == PLAYER0]
    default = {v: a.successors[v][0][0] for v in p0}

    def choose(node):
        return win.strategy.get(node, (default[node[0]], None))[0]

    reached = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        n = queue.popleft()
        nxt = [next(n2 for n2 in game.succ[n] if n2[0] == choose(n))] \
            if a.owner(n[0]) == PLAYER0 else list(game.succ[n])
        for n2 in nxt:
            if n2 not in seen:
                seen.add(n2)
                reached.append(n2)
                queue.append(n2)
    update = {("start", start[0]): start}
    output = {}
    for v in p0:
        output[("start", v)] = choose(start) if v == start[0] else default[v]
    for n in reached:
        for n2 in game.succ[n]:
            update[(n, n2[0])] = n2
        for v in p0:
            output[(n, v)] = default[v]
        for n2 in game.succ[n]:
            if n2[0] in default:
                output[(n, n2[0])] = choose(n2)
    return MealyStrategy(("start", *reached), "start", update, output)


def check_deviation(g: SPGame, sigma: MealyStrategy, hv: Sequence[str]) -> None:
    if len(hv) < 2:
        raise GameError("a deviation has at least two vertices")
    if hv[0] != g.init:
        raise GameError(f"deviation must start at {g.init}")
    g.arena.check_path(hv)
    h = hv[:-1]
    if g.arena.owner(h[-1]) != PLAYER1:
        raise GameError(f"not a deviation: {h[-1]} is not a Player-1 vertex")
    if not simulate(sigma, g, h)[0]:
        raise GameError("not a deviation: its prefix is not consistent with the strategy")


def punishing_strategy(g: SPGame, sigma: MealyStrategy, deviation: Sequence[str], B: int,
                       front: ParetoFront, *, alpha: int | None = None) -> MealyStrategy | None:
    """Strategy for the subgame after ``deviation`` ensuring value <= B or a dominated cost.

    The returned machine arrives at ``deviation[-1]`` in its initial state.
    Returns ``None`` when no such strategy exists.
    """
    hv = tuple(deviation)
    check_deviation(g, sigma, hv)
    if alpha is None:
        alpha = analysis_alpha(g, sigma.size, B)
    if record_of(g, hv[:-1], alpha).m2 is not PENDING:
        return first_successor_strategy(g)
    game = RecordGame(g, alpha)
    start = (hv[-1], game.start_record(hv))
    game.grow([start])
    win = game.solve(B, front)
    if start not in win.region:
        return None
    return record_machine(game, start, win)
