"""
Bounds on Pareto-optimal costs
==============================

The function F(B, t) bounds the finite components of the front of a solution
without eliminable cycles; the tree helpers explore the depth argument behind it.
"""

# %%
import math

from spgames import bound_f
from spgames.synthesis import leaf_count, max_unary_run, min_leaf_depth

print(bound_f(5, 1, 10, 4).to_text())
print()
print(bound_f(5, 3, 10, 4).to_text())

# %%
# Number of decimal digits of F(0, t) as t grows.
for t in range(1, 6):
    print(t, len(str(bound_f(0, t, 10, 4).alpha_recommendation)))

# %%
# A tree with two leaves, runs of single-child nodes of length 1, and leaves at
# depth 3: the bound l * log2(n) = 2 is too small here, while
# l * floor(log2(n)) + l - 1 = 3 holds.
tree = [[[[]], [[]]]]
n, ell = leaf_count(tree), max_unary_run(tree) + 1
print("leaves", n, "l", ell, "min depth", min_leaf_depth(tree),
      "l*log2(n)", ell * math.log2(n),
      "l*floor(log2 n)+l-1", ell * math.floor(math.log2(n)) + ell - 1)
