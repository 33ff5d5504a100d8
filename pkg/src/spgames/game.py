"""Game arenas, Stackelberg-Pareto reachability games and arena transformations.

A game is read from a JSON document of the form::

    {"vertices": ["v0", ...], "player0": ["v2", ...],
     "edges": [["v0", "v1", 4], ...],
     "init": "v0", "target0": ["v3"], "targets1": [["v1"], ["v9"]]}

Vertices not listed in ``player0`` belong to Player 1.  The order of
``vertices`` is the canonical vertex order used for every tie-break.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

PLAYER0 = 0
PLAYER1 = 1

#: separator in the names of vertices created by :func:`binarize`
RESERVED = "#"


class GameError(ValueError):
    """Raised when a game document or game object violates an invariant."""


@dataclass(frozen=True)
class Arena:
    vertices: tuple[str, ...]
    player0: frozenset[str]
    edges: Mapping[tuple[str, str], int]
    init: str

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "player0", frozenset(self.player0))
        object.__setattr__(self, "edges", dict(self.edges))
        self.validate()

    def validate(self) -> None:
        seen = set()
        for v in self.vertices:
            if not isinstance(v, str) or not v:
                raise GameError(f"invalid vertex id {v!r}")
            if v in seen:
                raise GameError(f"duplicate vertex {v}")
            seen.add(v)
        for v in self.player0:
            if v not in seen:
                raise GameError(f"unknown vertex id {v} in player0")
        if self.init not in seen:
            raise GameError(f"unknown vertex id {self.init} (init)")
        for (u, v), w in self.edges.items():
            for x in (u, v):
                if x not in seen:
                    raise GameError(f"unknown vertex id {x} in edge ({u},{v})")
            if isinstance(w, bool) or not isinstance(w, int):
                raise GameError(f"non-integer weight {w!r} on edge ({u},{v})")
            if w < 0:
                raise GameError(f"negative weight {w} on edge ({u},{v})")
        for v in self.vertices:
            if not self.successors[v]:
                raise GameError(f"dead-end vertex {v}")

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def successors(self) -> dict[str, tuple[tuple[str, int], ...]]:
        """Outgoing ``(target, weight)`` pairs per vertex, in vertex order."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        out: dict[str, list[tuple[str, int]]] = {v: [] for v in self.vertices}
        for (u, v), w in self.edges.items():
            out[u].append((v, w))
        return {u: tuple(sorted(s, key=lambda p: idx[p[0]])) for u, s in out.items()}

    @cached_property
    def max_weight(self) -> int:
        return max(self.edges.values(), default=0)

    def owner(self, v: str) -> int:
        return PLAYER0 if v in self.player0 else PLAYER1

    def weight(self, u: str, v: str) -> int:
        try:
            return self.edges[(u, v)]
        except KeyError:
            raise GameError(f"no edge ({u},{v})") from None

    def is_binary(self) -> bool:
        return all(w <= 1 for w in self.edges.values())

    def check_path(self, path: Sequence[str]) -> None:
        for u, v in zip(path, path[1:]):
            if (u, v) not in self.edges:
                raise GameError(f"not a path: no edge ({u},{v})")
        for v in path:
            if v not in self.index:
                raise GameError(f"unknown vertex id {v}")

    def path_weight(self, path: Sequence[str]) -> int:
        return sum(self.edges[(u, v)] for u, v in zip(path, path[1:]))


@dataclass(frozen=True)
class SPGame:
    arena: Arena
    target0: frozenset[str]
    targets1: tuple[frozenset[str], ...]

    def __post_init__(self):
        object.__setattr__(self, "target0", frozenset(self.target0))
        object.__setattr__(self, "targets1", tuple(frozenset(t) for t in self.targets1))
        if not self.targets1:
            raise GameError("empty targets list: at least one Player-1 target is required")
        known = self.arena.index
        for t in (self.target0, *self.targets1):
            for v in t:
                if v not in known:
                    raise GameError(f"unknown vertex id {v} in targets")

    @property
    def dimension(self) -> int:
        return len(self.targets1)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.arena.vertices

    @property
    def init(self) -> str:
        return self.arena.init

    @cached_property
    def membership(self) -> dict[str, tuple[bool, tuple[bool, ...]]]:
        """Per vertex: (in T0, (in T1, ..., in Tt))."""
        return {
            v: (v in self.target0, tuple(v in t for t in self.targets1))
            for v in self.arena.vertices
        }

    def to_dict(self) -> dict:
        a = self.arena
        return {
            "vertices": list(a.vertices),
            "player0": [v for v in a.vertices if v in a.player0],
            "edges": [[u, v, w] for u in a.vertices for v, w in a.successors[u]],
            "init": a.init,
            "target0": [v for v in a.vertices if v in self.target0],
            "targets1": [[v for v in a.vertices if v in t] for t in self.targets1],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


@dataclass(frozen=True)
class VertexMap:
    """Correspondence between a game and its binarization."""

    forward: Mapping[str, str]
    edge_paths: Mapping[tuple[str, str], tuple[str, ...]] = field(default_factory=dict)

    def map_path(self, path: Sequence[str]) -> list[str]:
        """Image of a vertex sequence (history, prefix or cycle body)."""
        if not path:
            return []
        out = [self.forward[path[0]]]
        for u, v in zip(path, path[1:]):
            out.extend(self.edge_paths.get((u, v), (self.forward[u], self.forward[v]))[1:])
        return out

    def map_cycle(self, cycle: Sequence[str]) -> list[str]:
        closed = self.map_path([*cycle, cycle[0]])
        return closed[:-1]


def _require(doc: Mapping, key: str, kind: type):
    if key not in doc:
        raise GameError(f"missing field {key!r}")
    val = doc[key]
    if not isinstance(val, kind):
        raise GameError(f"field {key!r} must be a {kind.__name__}")
    return val


def game_from_dict(doc: Mapping) -> SPGame:
    if not isinstance(doc, Mapping):
        raise GameError("game document must be a JSON object")
    vertices = _require(doc, "vertices", list)
    player0 = _require(doc, "player0", list)
    edges: dict[tuple[str, str], int] = {}
    for e in _require(doc, "edges", list):
        if not isinstance(e, list) or len(e) != 3:
            raise GameError(f"edge {e!r} must be [source, target, weight]")
        u, v, w = e
        if (u, v) in edges:
            raise GameError(f"duplicate edge ({u},{v})")
        edges[(u, v)] = w
    init = _require(doc, "init", str)
    target0 = _require(doc, "target0", list)
    targets1 = _require(doc, "targets1", list)
    if not all(isinstance(t, list) for t in targets1):
        raise GameError("targets1 must be a list of vertex lists")
    arena = Arena(tuple(vertices), frozenset(player0), edges, init)
    return SPGame(arena, frozenset(target0), tuple(frozenset(t) for t in targets1))


def parse_game(document: str) -> SPGame:
    """Parse and validate a game document."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise GameError(f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return game_from_dict(doc)


def load_game(path) -> SPGame:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


def make_game(
    vertices: Iterable[str],
    player0: Iterable[str],
    edges: Iterable[tuple[str, str, int]],
    init: str,
    target0: Iterable[str],
    targets1: Iterable[Iterable[str]],
) -> SPGame:
    """Build a game from Python values; same validation as :func:`parse_game`."""
    return game_from_dict({
        "vertices": list(vertices),
        "player0": list(player0),
        "edges": [list(e) for e in edges],
        "init": init,
        "target0": list(target0),
        "targets1": [list(t) for t in targets1],
    })


def binarize(g: SPGame) -> tuple[SPGame, VertexMap]:
    """Replace every edge of weight w >= 2 by a path of w edges of weight 1.

    The interior vertices are shared between edges with the same target: vertex
    ``v`` gets a chain ``v#k -> ... -> v#1 -> v`` of fresh Player-0 vertices (one
    successor each, in no target) and an edge ``(u, v)`` of weight ``w`` enters it
    at ``v#(w-1)``.  This keeps ``|V'| <= |V| * W``; plays still correspond one to
    one, with the same value and cost.
    """
    a = g.arena
    depth = {v: 0 for v in a.vertices}
    for (u, v), w in a.edges.items():
        depth[v] = max(depth[v], w - 1)
    vertices = list(a.vertices)
    player0 = set(a.player0)
    edges: dict[tuple[str, str], int] = {}

    def chain(v: str, k: int) -> str:
        return v if k == 0 else f"{v}{RESERVED}{k}"

    for v in a.vertices:
        for k in range(1, depth[v] + 1):
            if chain(v, k) in a.index:
                raise GameError(f"vertex id {chain(v, k)!r} clashes with a subdivision vertex")
            vertices.append(chain(v, k))
            player0.add(chain(v, k))
            edges[(chain(v, k), chain(v, k - 1))] = 1
    edge_paths: dict[tuple[str, str], tuple[str, ...]] = {}
    for u in a.vertices:
        for v, w in a.successors[u]:
            if w <= 1:
                edges[(u, v)] = w
                continue
            edges[(u, chain(v, w - 1))] = 1
            edge_paths[(u, v)] = (u, *(chain(v, k) for k in range(w - 1, -1, -1)))
    arena = Arena(tuple(vertices), frozenset(player0), edges, a.init)
    forward = {v: v for v in a.vertices}
    return SPGame(arena, g.target0, g.targets1), VertexMap(forward, edge_paths)


def booleanize(g: SPGame) -> SPGame:
    """Same graph and targets with every weight set to zero."""
    a = g.arena
    arena = Arena(a.vertices, a.player0, {e: 0 for e in a.edges}, a.init)
    return SPGame(arena, g.target0, g.targets1)
