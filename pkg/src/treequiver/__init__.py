"""Injective representations of tree quivers with coefficients in Z/m.

Finite trees, rational (finitely presented) infinite trees and transfinite
segment schemes are supported.  See the README for a tour.
"""

from .ordinal import OMEGA, Ordinal, OrdinalError, ord_add, ord_cmp, ord_sup
from .linalg import FgModule, right_inverse, smith_decompose, solve_linear
from .quiver import (FiniteQuiver, RationalTreeScheme, TreeError, infinite_antichain, is_barren,
                     level_counts, path_space, unfold, validate_tree)
from .representation import (Representation, RepMorphism, costalk_functor, hom_dimension,
                             injective_envelope, is_injective_rep, matlis_decompose, stalk_functor)
from .transfinite import (CocontinuousRep, SegmentNode, SegmentScheme, build_indec_injective,
                          check_cocontinuous, classify, complete, is_complete, is_noetherian,
                          strata_profile, truncate)
from .counterexample import (build_witness_family, forced_components, interchange_check,
                             source_conditions_check, forcing_certificate)

__version__ = "0.1.0"
