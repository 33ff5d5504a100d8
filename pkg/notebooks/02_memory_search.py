"""
How much memory does the leader need?
=====================================

Exhaustive search over small Mealy machines, compared with the hand-written
two-state strategy.
"""

# %%
from spgames import booleanize, brute_force_search, memoryless, verify
from spgames.synthesis import count_candidates
from fig1 import FIG1

# Going straight to v7 lets the follower pick v8, a Pareto-optimal play that
# never reaches the leader's target.
straight = memoryless(FIG1, {"v3": "v4", "v6": "v7"})
print(verify(FIG1, straight, 5).to_dict())

# %%
# Looping on v6 forever is also memoryless.  The play v0 v6 v6 ... visits no
# target at all, so its cost (inf,inf,inf) is dominated and it does not matter.
looping = memoryless(FIG1, {"v3": "v4", "v6": "v6"})
print(verify(FIG1, looping, 5).to_dict())

# %%
print("memoryless candidates:", count_candidates(FIG1, 1))
res = brute_force_search(FIG1, 5, 1)
print("first memoryless solution:", res.strategy.to_json(FIG1))

# %%
# Without weights the bound B = 0 cannot be met with two memory states.
boolean = booleanize(FIG1)
res = brute_force_search(boolean, 0, 2)
print("boolean game, memory <= 2:", res.strategy, "after", res.candidates_checked, "candidates")
