# Why non-barren trees break the finite picture
# =============================================
#
# On a non-barren tree a direct sum of injectives need not be injective.
# The obstruction shows up at finite stages: take stalks S_{w_j} at the
# members w_1, w_2, ... of an infinite antichain, their envelopes, and the
# map phi between the sums.  Any lift of phi through the root stalk is
# forced to have nonzero components 1..i when evaluated at w_{i+1}, so
# the forced support grows without bound.

from treequiver import corpus
from treequiver.counterexample import (build_witness_family, forced_components, interchange_check,
                                       source_conditions_check, forcing_certificate)

S = corpus.binary_scheme()

# %% One stage in detail, N = 4.
F = build_witness_family(S, 2, 4)
print("antichain:", [F.vertex(j) for j in range(1, 5)], " unfolded to depth", F.depth)
for r in forced_components(F):
    print(f"  at w_{r.index + 1}: forced nonzero components {sorted(r.forced)}")
print("sum of envelopes satisfies the local conditions:",
      source_conditions_check(F.quiver, F.envelope_sum).overall)

# %% The certificate across N = 1..5: forced counts grow by one each time.
cert = forcing_certificate(S, 2, 5)
print(cert.summary())

# %% Finite products and sums interchange, which is why finite out-degree matters.
print(interchange_check(3, 4, 6, seed=1))
