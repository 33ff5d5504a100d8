"""Finite-memory leader strategies encoded as Mealy machines.

Semantics: arriving at vertex ``v`` in memory state ``m``, the leader (if ``v``
is a Player-0 vertex) moves to ``output(m, v)``; the memory then becomes
``update(m, v)``.  The machine is in ``init`` when it arrives at the first
vertex.  Unlisted update entries keep the state unchanged.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from .game import PLAYER0, GameError, SPGame, VertexMap

State = Hashable


class StrategyError(ValueError):
    pass


@dataclass(frozen=True)
class MealyStrategy:
    states: tuple
    init: State
    update: Mapping[tuple[State, str], State]
    output: Mapping[tuple[State, str], str]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "update", {k: m for k, m in self.update.items() if k[0] != m})
        object.__setattr__(self, "output", dict(self.output))
        if not self.states:
            raise StrategyError("a strategy needs at least one state")
        if self.init not in self.states:
            raise StrategyError(f"unknown initial state {self.init!r}")

    @property
    def size(self) -> int:
        return len(self.states)

    def delta(self, m: State, v: str) -> State:
        return self.update.get((m, v), m)

    def move(self, m: State, v: str) -> str:
        return self.output[(m, v)]

    def validate(self, g: SPGame) -> None:
        a = g.arena
        known = set(self.states)
        for (m, v), m2 in self.update.items():
            if m not in known or m2 not in known:
                raise StrategyError(f"update ({m},{v}) -> {m2} uses an unknown state")
            if v not in a.index:
                raise StrategyError(f"update mentions unknown vertex {v}")
        for m in self.states:
            for v in a.vertices:
                if a.owner(v) != PLAYER0:
                    continue
                if (m, v) not in self.output:
                    raise StrategyError(f"no output for state {m} at Player-0 vertex {v}")
                if (v, self.output[(m, v)]) not in a.edges:
                    raise StrategyError(
                        f"output ({m},{v}) -> {self.output[(m, v)]} is not an edge")

    def to_dict(self, g: SPGame | None = None) -> dict:
        """JSON document; states are renamed ``s0, s1, ...`` in state order."""
        names = {m: f"s{i}" for i, m in enumerate(self.states)}
        if all(isinstance(m, str) for m in self.states):
            names = {m: m for m in self.states}
        order = (lambda v: g.arena.index[v]) if g is not None else (lambda v: v)
        sidx = {m: i for i, m in enumerate(self.states)}
        upd = sorted(self.update.items(), key=lambda kv: (sidx[kv[0][0]], order(kv[0][1])))
        out = sorted(self.output.items(), key=lambda kv: (sidx[kv[0][0]], order(kv[0][1])))
        return {
            "states": [names[m] for m in self.states],
            "init": names[self.init],
            "update": [[names[m], v, names[m2]] for (m, v), m2 in upd],
            "output": [[names[m], v, u] for (m, v), u in out],
        }

    def to_json(self, g: SPGame | None = None, **kw) -> str:
        return json.dumps(self.to_dict(g), **kw)

    def relabeled(self) -> "MealyStrategy":
        names = {m: f"s{i}" for i, m in enumerate(self.states)}
        return MealyStrategy(
            tuple(names.values()), names[self.init],
            {(names[m], v): names[m2] for (m, v), m2 in self.update.items()},
            {(names[m], v): u for (m, v), u in self.output.items()},
        )


def strategy_from_dict(doc: Mapping, g: SPGame | None = None) -> MealyStrategy:
    try:
        states = list(doc["states"])
        init = doc["init"]
        update = {(m, v): m2 for m, v, m2 in doc.get("update", [])}
        output = {(m, v): u for m, v, u in doc["output"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise StrategyError(f"malformed strategy document: {exc}") from None
    sigma = MealyStrategy(tuple(states), init, update, output)
    if g is not None:
        sigma.validate(g)
    return sigma


def parse_strategy(document: str, g: SPGame | None = None) -> MealyStrategy:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise StrategyError(
            f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return strategy_from_dict(doc, g)


def load_strategy(path, g: SPGame | None = None) -> MealyStrategy:
    with open(path, encoding="utf-8") as fh:
        return parse_strategy(fh.read(), g)


def memoryless(g: SPGame, choice: Mapping[str, str] | None = None) -> MealyStrategy:
    """One-state machine; Player-0 vertices not in ``choice`` take their first successor."""
    choice = choice or {}
    a = g.arena
    out = {}
    for v in a.vertices:
        if a.owner(v) == PLAYER0:
            out[("s0", v)] = choice.get(v, a.successors[v][0][0])
    return MealyStrategy(("s0",), "s0", {}, out)


def simulate(sigma: MealyStrategy, g: SPGame, h: Sequence[str], start_state=None):
    """Return ``(consistent, end_state)`` for the history ``h``."""
    if not h:
        raise GameError("empty history")
    g.arena.check_path(h)
    m = sigma.init if start_state is None else start_state
    consistent = True
    a = g.arena
    for k, v in enumerate(h):
        if k + 1 < len(h) and a.owner(v) == PLAYER0 and sigma.move(m, v) != h[k + 1]:
            consistent = False
        m = sigma.delta(m, v)
    return consistent, m


def arrival_state(sigma: MealyStrategy, h: Sequence[str], start_state=None):
    """Memory state in which the machine arrives at ``h[-1]``."""
    m = sigma.init if start_state is None else start_state
    for v in h[:-1]:
        m = sigma.delta(m, v)
    return m


@dataclass(frozen=True)
class ProductGraph:
    """Reachable part of arena x memory; nodes are ``(vertex, arrival state)``."""

    init: tuple
    nodes: tuple
    succ: Mapping[tuple, tuple]  # node -> ((node, weight), ...)

    def __len__(self):
        return len(self.nodes)


def product(g: SPGame, sigma: MealyStrategy, start: str | None = None,
            start_state=None) -> ProductGraph:
    a = g.arena
    init = (start if start is not None else g.init,
            sigma.init if start_state is None else start_state)
    succ: dict = {}
    order = [init]
    queue = deque([init])
    seen = {init}
    while queue:
        node = queue.popleft()
        v, m = node
        m2 = sigma.delta(m, v)
        if a.owner(v) == PLAYER0:
            u = sigma.move(m, v)
            nxt = (((u, m2), a.edges[(v, u)]),)
        else:
            nxt = tuple(((u, m2), w) for u, w in a.successors[v])
        succ[node] = nxt
        for n2, _ in nxt:
            if n2 not in seen:
                seen.add(n2)
                order.append(n2)
                queue.append(n2)
    return ProductGraph(init, tuple(order), succ)


def trim(g: SPGame, sigma: MealyStrategy) -> MealyStrategy:
    """Drop memory states that are never used in the product graph.

    Surviving states keep their ids and are listed in discovery order;
    behaviour on reachable histories is unchanged.
    """
    p = product(g, sigma)
    used = list(dict.fromkeys(m for _, m in p.nodes))
    keep = set(used)
    a = g.arena
    update = {}
    output = {}
    for (v, m) in p.nodes:
        m2 = sigma.delta(m, v)
        if m2 != m:
            update[(m, v)] = m2
    for m in used:
        for v in a.vertices:
            if a.owner(v) == PLAYER0:
                output[(m, v)] = sigma.move(m, v)
    assert all(m2 in keep for m2 in update.values())
    return MealyStrategy(tuple(used), sigma.init, update, output)


class _SelfAt:
    def __init__(self, h):
        self.h = tuple(h)


def self_at(h: Sequence[str]) -> _SelfAt:
    """Marker for :func:`splice`: continue as the strategy would after ``h``."""
    return _SelfAt(h)


def splice(sigma: MealyStrategy, g: SPGame, at: Sequence[str], tau) -> MealyStrategy:
    """Play ``sigma`` except on histories extending ``at``, where ``tau`` is played.

    ``tau`` is either a :class:`MealyStrategy`, which arrives at ``at[-1]`` in
    its initial state, or ``self_at(h)`` with ``h[-1] == at[-1]``, meaning
    "play as ``sigma`` plays after ``h``".
    """
    at = tuple(at)
    if not at:
        raise GameError("empty splice point")
    g.arena.check_path(at)
    if at[0] != g.init:
        raise GameError(f"splice point must start at {g.init}")
    if isinstance(tau, _SelfAt):
        h = tau.h
        g.arena.check_path(h)
        if h[-1] != at[-1]:
            raise GameError("self_at history must end where the splice point ends")
        tau = MealyStrategy(sigma.states, arrival_state(sigma, h), sigma.update, sigma.output)
    a = g.arena
    k = len(at) - 1
    track = [("track", i, m) for i in range(k + 1) for m in sigma.states]
    out_states = [("out", m) for m in sigma.states]
    tau_states = [("tau", n) for n in tau.states]
    update = {}
    output = {}
    p0 = [v for v in a.vertices if a.owner(v) == PLAYER0]
    for (_, i, m) in track:
        s = ("track", i, m)
        for v in a.vertices:
            if v == at[i] and i == k:
                update[(s, v)] = ("tau", tau.delta(tau.init, v))
            elif v == at[i]:
                update[(s, v)] = ("track", i + 1, sigma.delta(m, v))
            else:
                update[(s, v)] = ("out", sigma.delta(m, v))
        for v in p0:
            output[(s, v)] = tau.move(tau.init, v) if (v == at[i] and i == k) else sigma.move(m, v)
    for m in sigma.states:
        for v in a.vertices:
            update[(("out", m), v)] = ("out", sigma.delta(m, v))
        for v in p0:
            output[(("out", m), v)] = sigma.move(m, v)
    for n in tau.states:
        for v in a.vertices:
            update[(("tau", n), v)] = ("tau", tau.delta(n, v))
        for v in p0:
            output[(("tau", n), v)] = tau.move(n, v)
    return MealyStrategy(tuple(track + out_states + tau_states), ("track", 0, sigma.init),
                         update, output)


def map_strategy(sigma: MealyStrategy, g2: SPGame, vmap: VertexMap) -> MealyStrategy:
    """Transport a strategy along :func:`spgames.game.binarize`.

    Fresh vertices keep the memory unchanged and take their unique successor.
    """
    output = {}
    a2 = g2.arena
    for (m, v), u in sigma.output.items():
        path = vmap.edge_paths.get((v, u))
        output[(m, vmap.forward[v])] = path[1] if path else vmap.forward[u]
    fresh = [v for v in a2.vertices if v not in set(vmap.forward.values())]
    for m in sigma.states:
        for v in fresh:
            output[(m, v)] = a2.successors[v][0][0]
    update = {(m, vmap.forward[v]): m2 for (m, v), m2 in sigma.update.items()}
    return MealyStrategy(sigma.states, sigma.init, update, output)
