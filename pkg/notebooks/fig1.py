"""The ten-vertex example game shared by the scripts in this directory."""
from spgames import MealyStrategy, make_game

FIG1 = make_game(
    [f"v{i}" for i in range(10)],
    ["v2", "v3", "v6", "v8", "v9"],
    [("v0", "v1", 4), ("v1", "v2", 4), ("v1", "v3", 1), ("v3", "v5", 1), ("v3", "v4", 2),
     ("v4", "v3", 1), ("v0", "v6", 1), ("v6", "v6", 1), ("v6", "v7", 1), ("v7", "v8", 1),
     ("v7", "v9", 1), ("v2", "v2", 1), ("v5", "v5", 1), ("v8", "v8", 1), ("v9", "v9", 1)],
    "v0", ["v3", "v9"], [["v1", "v8"], ["v9"], ["v2", "v4"]],
)

_fixed = {"v2": "v2", "v3": "v4", "v8": "v8", "v9": "v9"}

# loop once on v6, then leave for v7
LOOP_ONCE = MealyStrategy(
    ("s0", "s1"), "s0", {("s0", "v6"): "s1"},
    {**{(m, v): u for m in ("s0", "s1") for v, u in _fixed.items()},
     ("s0", "v6"): "v6", ("s1", "v6"): "v7"},
)
