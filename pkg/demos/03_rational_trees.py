# Infinite trees from finite automata
# ===================================
#
# A rational tree is the unfolding of a finite transition system from a
# root state.  The tree is barren when its level counts n_i become
# constant.  Non-barren trees carry an explicit infinite antichain: a comb
# whose members hang off one spine.

from treequiver import corpus
from treequiver.dot import unfolding_dot
from treequiver.quiver import address_name, infinite_antichain, is_barren, level_counts, path_space

for name in ("three_branch", "A_inf", "ray_with_leaves", "binary", "alternating_leaves", "chained_cycles"):
    S = corpus.SCHEMES[name]()
    r = is_barren(S)
    print(f"{name:20s} counts {level_counts(S, 8)}  -> {r.describe()}")

# %% The three-ray figure is barren with stable level count 3.
r = is_barren(corpus.three_branch_scheme())
print("three rays:", r.describe(), " transient", r.transient)

# %% The binary tree is not: here is its comb antichain.
S = corpus.binary_scheme()
comb = infinite_antichain(S)
print(comb.describe())
print("first five members:", [address_name(w) for w in comb.members(5)])

# %% A bounded but periodic tree is still not barren.
print(is_barren(corpus.alternating_leaves_scheme()).describe())

# %% Path spaces: the subtree above a vertex is again rational.
P = path_space(corpus.three_branch_finite(2), "a1")
print("path space at a1:", level_counts(P, 4))

# %% A picture of the binary unfolding with the antichain marked.
print(unfolding_dot(S, 3, comb.members(2)))
