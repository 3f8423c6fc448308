# Trees with transfinite branches
# ===============================
#
# A segment scheme glues ordinal-length chains: a node of length w without
# a top has no last element, one of length w with a top ends at position w.
# Strata group vertices by the ordinal distance from the root.  Completion
# adds a top to every topless limit leaf, and the indecomposable injectives
# of the completed tree are indexed by (vertex, indecomposable injective
# module).

from treequiver import corpus
from treequiver.linalg import FgModule
from treequiver.ordinal import OMEGA
from treequiver.representation import is_injective_rep
from treequiver.transfinite import (TransfiniteAddress, build_indec_injective, check_cocontinuous,
                                    classify, complete, is_complete, strata_profile, truncate)

# %% The chain 0 -> 1 -> 2 -> ... -> w: strata are 0, 1, 2, ..., w.
T = corpus.omega_with_top()
p = strata_profile(T)
print("least empty stratum:", p.least_empty.pretty())
for lo, hi, n in p.blocks():
    print(f"  strata [{lo.pretty()}, {hi.pretty()}) hold {n} vertex each")

# %% Completing the open w-chain adds exactly one vertex, its top.
A = corpus.a_infinity_segments()
C = complete(A)
print("complete?", is_complete(A), "->", is_complete(C.scheme), " added:", [a.name() for a in C.added])

# %% The classification stream over F_2: E_0, E_1, E_2, ... then E^w.
cl = classify(A, 2)
print("first labels:", [str(lab) for lab in cl.take(4)])
print("at stratum w:", [str(lab) for lab in cl.labels_at(OMEGA)])

# %% E^w is k everywhere with identity maps; it is cocontinuous.
Tbar = cl.scheme
Einf = build_indec_injective(Tbar, TransfiniteAddress(("a",), OMEGA), FgModule((2,)), 2)
print("E^w cocontinuous?", check_cocontinuous(Einf) == [])
tr = truncate(Tbar, 5)
R = Einf.restrict(tr)
print("on a finite truncation:", R.dimension_vector(), " injective?", is_injective_rep(R)[0])

# %% Over Z/4 every vertex carries one label, with module Z/4.
print("labels over Z/4:", [str(lab) for lab in classify(corpus.omega_plus_three(), 4).take(3)])
