import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from spgames import (
    GameError, Lasso, binarize, booleanize, compute_pareto, eval_lasso, game_from_dict,
    load_game, memoryless, parse_game,
)
from spgames.strategy import map_strategy

from generators import random_game, random_strategy


def fig1_doc(data_path):
    with open(data_path("fig1.json")) as fh:
        return json.load(fh)


def test_fig1_shape(fig1):
    assert len(fig1.vertices) == 10
    assert fig1.dimension == 3
    assert fig1.arena.max_weight == 4
    assert fig1.arena.owner("v3") == 0 and fig1.arena.owner("v1") == 1
    assert fig1.membership["v9"] == (True, (False, True, False))


def test_round_trip(fig1):
    assert parse_game(fig1.to_json()) == fig1


@pytest.mark.parametrize("mutate, message", [
    (lambda d: d["edges"].append(["v0", "zz", 1]), "unknown vertex id zz"),
    (lambda d: d["edges"].__setitem__(0, ["v0", "v1", -1]), "negative weight"),
    (lambda d: d.__setitem__("edges", [e for e in d["edges"] if e[0] != "v5"]), "dead-end vertex v5"),
    (lambda d: d.__setitem__("targets1", []), "empty targets list"),
    (lambda d: d["edges"].append(["v0", "v1", 2]), "duplicate edge"),
    (lambda d: d.pop("init"), "missing field 'init'"),
    (lambda d: d.__setitem__("target0", ["nope"]), "unknown vertex id nope"),
])
def test_invalid_documents(data_path, mutate, message):
    doc = fig1_doc(data_path)
    mutate(doc)
    with pytest.raises(GameError, match=message):
        game_from_dict(doc)


def test_syntax_error_position():
    with pytest.raises(GameError, match="line 2 column"):
        parse_game('{"vertices": [\n  "v0",, ]}')


def test_binarize_fig1(fig1):
    g2, vmap = binarize(fig1)
    assert len(g2.vertices) == 17
    assert g2.arena.is_binary()
    fresh = [v for v in g2.vertices if v not in fig1.vertices]
    for v in fresh:
        assert len(g2.arena.successors[v]) == 1
        assert v in g2.arena.player0
        assert g2.membership[v] == (False, (False, False, False))
    assert vmap.map_path(["v0", "v1"]) == ["v0", "v1#3", "v1#2", "v1#1", "v1"]
    assert g2.arena.path_weight(vmap.map_path(["v0", "v1", "v3", "v4"])) == 7


def test_binarize_name_clash(data_path):
    doc = fig1_doc(data_path)
    doc["vertices"].append("v1#2")
    doc["edges"].append(["v1#2", "v1#2", 0])
    with pytest.raises(GameError, match="clashes"):
        binarize(game_from_dict(doc))


def test_binarize_output_reloads(fig1):
    g2, _ = binarize(fig1)
    assert parse_game(g2.to_json()) == g2


def test_binarize_identity_on_binary(fig1):
    g = booleanize(fig1)
    g2, vmap = binarize(g)
    assert g2 == g and not vmap.edge_paths


def test_booleanize(fig1):
    g = booleanize(fig1)
    assert set(g.arena.edges.values()) == {0}
    assert set(g.arena.edges) == set(fig1.arena.edges)


def _random_lasso(rng, g, steps=12):
    a = g.arena
    path = [g.init]
    for _ in range(steps):
        path.append(rng.choice(a.successors[path[-1]])[0])
    seen = {}
    for i, v in enumerate(path):
        if v in seen:
            return Lasso(tuple(path[: seen[v]]), tuple(path[seen[v]: i]))
        seen[v] = i
    return None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_binarize_preserves_value_and_cost(seed):
    rng = random.Random(seed)
    g = random_game(rng)
    g2, vmap = binarize(g)
    W = g.arena.max_weight
    assert len(g2.vertices) <= len(g.vertices) * max(W, 1)
    rho = _random_lasso(rng, g)
    if rho is None:
        return
    # the edge from the prefix into the cycle is subdivided too
    prefix = vmap.map_path([*rho.prefix, rho.cycle[0]])[:-1] if rho.prefix else []
    image = Lasso(tuple(prefix), tuple(vmap.map_cycle(rho.cycle)))
    assert eval_lasso(g2, image) == eval_lasso(g, rho)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_booleanize_binarize_commute(seed):
    rng = random.Random(seed)
    g = random_game(rng)
    sigma = random_strategy(rng, g)
    b1, m1 = binarize(booleanize(g))
    g2, m2 = binarize(g)
    b2 = booleanize(g2)
    f1 = compute_pareto(b1, map_strategy(sigma, b1, m1))
    f2 = compute_pareto(b2, map_strategy(sigma, b2, m2))
    assert f1 == f2


def test_load_game_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_game(tmp_path / "missing.json")


def test_memoryless_default_choice(fig1):
    sigma = memoryless(fig1)
    assert sigma.move("s0", "v6") == "v6"
    sigma.validate(fig1)
