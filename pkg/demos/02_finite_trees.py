# Injective representations of a finite tree
# ==========================================
#
# A representation puts a Z/m-module at each vertex and a homomorphism on
# each arrow.  On a tree the indecomposable injectives are the costalk
# representations I_v: the module at u counts the paths from u to v.  The
# local criterion (module injectivity plus a split surjection onto the
# outgoing product) recognises injectives, the envelope embeds any
# representation into an injective one, and a Matlis decomposition reads
# off the multiplicities of the I_v.

import numpy as np

from treequiver import corpus
from treequiver import linalg as la
from treequiver.dot import tree_dot
from treequiver.linalg import FgModule
from treequiver.representation import (base_change, costalk_functor, direct_sum, hom_dimension,
                                       injective_envelope, is_injective_rep, matlis_decompose,
                                       representation, socle_dimensions, stalk_functor)

Q = corpus.y_tree()          # r -> m -> {x, y}
k = FgModule((2,))
print(tree_dot(Q))

# %% The costalk at m is k on the chain r -> m and zero on the leaves.
Im = costalk_functor("m", k, Q, 2)
print("I_m dimensions:", Im.dimension_vector())
print("I_m injective? ", is_injective_rep(Im)[0])

# %% A stalk is usually not injective.  Its envelope is the costalk.
Sx = stalk_functor("x", k, Q, 2)
ok, report = is_injective_rep(Sx)
print("S_x injective? ", ok, " failing vertices:", [v for v, c in report.items() if not c.ok])
E, iota = injective_envelope(Sx)
print("envelope of S_x:", E.dimension_vector(), " socle:", socle_dimensions(Sx))

# %% Adjunction: maps into I_v(M) are maps out of the value at v.
X = representation(Q, 2, {"r": 2, "m": 1, "x": 1, "y": 0}, {"a": [[1, 1]], "b": [[1]]})
print("dim Hom(X, I_m) =", hom_dimension(X, Im), "= dim X(m) =", X.dim("m"))

# %% Matlis decomposition survives a change of basis at every vertex.
Y = direct_sum([Im, Im, costalk_functor("x", k, Q, 2), costalk_functor("r", k, Q, 2)], Q, 2)
rng = np.random.default_rng(0)
P = {}
for v in Q.vertices:
    n = Y.dim(v)
    while True:
        A = rng.integers(0, 2, size=(n, n))
        if la.rank_mod_p(A, 2) == n:
            break
    P[v] = A
print("multiplicities after base change:", matlis_decompose(base_change(Y, P)))

# %% Over Z/4 the coefficient module matters: I_v(Z/2) fails condition (i).
ok, report = is_injective_rep(costalk_functor("m", FgModule((2,)), Q, 4))
print("I_m(Z/2) over Z/4 injective?", ok, " module injective at m?", report["m"].cond_i)
print("I_m(Z/4) over Z/4 injective?", is_injective_rep(costalk_functor("m", FgModule((4,)), Q, 4))[0])
