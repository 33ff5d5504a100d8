import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from spgames import (
    INF, Lasso, booleanize, build_extended, compute_pareto, eval_lasso, memoryless,
    verify,
)
from spgames.analysis import ResourceError

from generators import random_game, random_strategy
from oracles import oracle_front, oracle_is_solution


def test_fig1_front_and_verdict(fig1, sigfig):
    H = build_extended(fig1, sigfig, 5)
    assert H.alpha == 10 * 2 * 3 * 4
    front = compute_pareto(fig1, sigfig, 5, H=H)
    assert set(front) == {(4, INF, 7), (INF, 4, INF)}
    v = verify(fig1, sigfig, 5, H=H)
    assert v.is_solution and v.counterexample is None
    assert v.to_dict()["front"] == ["(4,inf,7)", "(inf,4,inf)"]


def test_memoryless_counterexample(fig1, signoloop):
    v = verify(fig1, signoloop, 5)
    assert not v.is_solution
    cex = v.counterexample
    assert cex.cost == (3, INF, INF) and cex.value == INF
    assert eval_lasso(fig1, cex.lasso) == (INF, (3, INF, INF))
    assert cex.lasso == Lasso(("v0", "v6", "v7"), ("v8",))


def test_literal_loop_variant_is_a_solution(fig1, sigfig):
    # dropping the update of sigfig leaves a machine that loops on v6 forever
    looping = memoryless(fig1, {"v3": "v4", "v6": "v6"})
    v = verify(fig1, looping, 5)
    assert v.is_solution and set(v.front) == {(4, INF, 7)}


def test_boolean_fig1_fails(fig1, sigfig):
    v = verify(booleanize(fig1), sigfig, 0)
    assert not v.is_solution
    assert v.counterexample.lasso == Lasso(("v0", "v1"), ("v2",))
    assert v.counterexample.value == INF


def test_bound_zero_changes_verdict(fig1, sigfig):
    assert not verify(fig1, sigfig, 4).is_solution
    assert verify(fig1, sigfig, 100).is_solution


def test_node_budget(fig1, sigfig):
    with pytest.raises(ResourceError, match="exceeds 3 nodes"):
        build_extended(fig1, sigfig, 5, max_nodes=3)


def test_fig1_is_fast(fig1, sigfig):
    start = time.perf_counter()
    verify(fig1, sigfig, 5)
    assert time.perf_counter() - start < 1.0


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 6))
def test_matches_lasso_oracle(seed, B):
    rng = random.Random(seed)
    g = random_game(rng, max_vertices=5)
    sigma = random_strategy(rng, g)
    v = verify(g, sigma, B)
    assert set(v.front) == oracle_front(g, sigma, B)
    assert v.is_solution == oracle_is_solution(g, sigma, B)
    if not v.is_solution:
        value, cost = eval_lasso(g, v.counterexample.lasso)
        assert cost in v.front and value > B


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_front_is_antichain_and_bound_independent(seed):
    rng = random.Random(seed)
    g = random_game(rng)
    sigma = random_strategy(rng, g)
    f0 = compute_pareto(g, sigma, 0)
    assert f0 == compute_pareto(g, sigma, 7)
    assert len(f0) >= 1
