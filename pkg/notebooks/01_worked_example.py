"""
Pareto front, verification and punishment on a small game
==========================================================

The leader (Player 0) fixes a strategy; the follower answers with any play whose
cost vector is Pareto-optimal.  A strategy is a solution for a bound B when each
such play reaches the leader's target with weight at most B.
"""

# %%
from spgames import compute_pareto, extract_witnesses, punishing_strategy, splice, verify
from fig1 import FIG1, LOOP_ONCE

print(FIG1.to_json())

# %%
# The front of the two-state strategy and its verdict for B = 5.
front = compute_pareto(FIG1, LOOP_ONCE, 5)
print("front:", front)
verdict = verify(FIG1, LOOP_ONCE, 5)
print("solution:", verdict.is_solution)

# %%
# One witness play per Pareto-optimal cost, with its regions (prefix lengths
# over which value, cost and the set of followed witnesses stay constant).
tree = extract_witnesses(FIG1, LOOP_ONCE, front, 5)
for c in tree.costs():
    print(c, tree.witnesses[c], "len =", tree.lengths[c], tree.regions[c])
print("deviations:", tree.deviations)

# %%
# After a deviation the leader switches to a punishing strategy.  Splicing it
# into the original strategy keeps a solution.
for hv in tree.deviations:
    tau = punishing_strategy(FIG1, LOOP_ONCE, hv, 5, front)
    spliced = splice(LOOP_ONCE, FIG1, hv, tau)
    print(" ".join(hv), "->", tau.size, "states; still a solution:",
          verify(FIG1, spliced, 5).is_solution)

# %%
# With B = 4 the witness of cost (4,inf,7) reaches the target too late.
print(verify(FIG1, LOOP_ONCE, 4).to_dict())
