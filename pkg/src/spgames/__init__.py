"""Stackelberg-Pareto reachability games on weighted graphs."""
from .analysis import (
    Counterexample, ExtendedGraph, ResourceError, Verdict, build_extended, compute_pareto,
    verify,
)
from .cost import (
    INF, PENDING, TOP, Dominance, Lasso, ParetoFront, Record, dominates, eval_lasso,
    finalize, format_cost, pareto_min, parse_cost,
)
from .game import (
    Arena, GameError, SPGame, VertexMap, binarize, booleanize, game_from_dict, load_game,
    make_game, parse_game,
)
from .strategy import (
    MealyStrategy, StrategyError, load_strategy, memoryless, parse_strategy, product,
    self_at, simulate, splice, strategy_from_dict, trim,
)
from .synthesis import (
    BoundReport, NotASolution, WitnessTree, bound_f, brute_force_search, brute_force_solve,
    eliminate_cycle, eliminate_cycles, extract_witnesses, normalize_solution,
)
from .zerosum import (
    RecordGame, TwoPlayerGraph, WinningResult, attractor, punishing_strategy,
    solve_reach_or_safe,
)

__version__ = "0.1.0"

__all__ = [
    "Counterexample",
    "ExtendedGraph",
    "ResourceError",
    "Verdict",
    "build_extended",
    "compute_pareto",
    "verify",
    "INF",
    "PENDING",
    "TOP",
    "Dominance",
    "Lasso",
    "ParetoFront",
    "Record",
    "dominates",
    "eval_lasso",
    "finalize",
    "format_cost",
    "pareto_min",
    "parse_cost",
    "Arena",
    "GameError",
    "SPGame",
    "VertexMap",
    "binarize",
    "booleanize",
    "game_from_dict",
    "load_game",
    "make_game",
    "parse_game",
    "MealyStrategy",
    "StrategyError",
    "load_strategy",
    "memoryless",
    "parse_strategy",
    "product",
    "self_at",
    "simulate",
    "splice",
    "strategy_from_dict",
    "trim",
    "BoundReport",
    "NotASolution",
    "WitnessTree",
    "bound_f",
    "brute_force_search",
    "brute_force_solve",
    "eliminate_cycle",
    "eliminate_cycles",
    "extract_witnesses",
    "normalize_solution",
    "RecordGame",
    "TwoPlayerGraph",
    "WinningResult",
    "attractor",
    "punishing_strategy",
    "solve_reach_or_safe",
]
