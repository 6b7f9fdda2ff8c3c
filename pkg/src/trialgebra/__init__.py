"""Exact computations with eight-dimensional composition algebras.

Composition algebras on a 3-fold Pfister form over F_p (p odd) or Q, their
triality components, the associated outer automorphisms of PGO+(n), double
signs, and isomorphism checks.
"""

from .compalg import (Algebra, CompositionAlgebra, canonical_involution, cayley_dickson,
                      check_composition, is_homomorphism, is_symmetric, isotope,
                      normalization_chain, para_hurwitz, pushforward, scalar_multiple,
                      symmetric_decomposition, transport_isotope, unit_element, unitalize, zorn)
from .exactcore import FiniteField, Rationals, mat_solve, parse_field
from .functor import (DoubleSign, IsoVerdict, TrialitarianPair, double_sign,
                      double_sign_via_orders, functor_image, iso_check, iso_search,
                      symmetric_criterion)
from .quadform import QuadraticForm, find_norm_vector, is_proper, pfister3, similarity_multiplier
from .session import Session
from .simgroup import (ProjSimilarity, Similarity, cartan_dieudonne, proj, random_isometry,
                       random_proper_isometry, reflect)
from .triality import (MarkedAuto, TrialityBase, TrialityPair, conj_marked, hurwitz_align,
                       marked_auto_of, rho, triality_components)

__version__ = "0.1.0"

__all__ = [
    "Algebra", "CompositionAlgebra", "canonical_involution", "cayley_dickson", "check_composition",
    "is_homomorphism", "is_symmetric", "isotope", "normalization_chain", "para_hurwitz",
    "pushforward", "scalar_multiple", "symmetric_decomposition", "transport_isotope",
    "unit_element", "unitalize", "zorn", "FiniteField", "Rationals", "mat_solve", "parse_field",
    "DoubleSign", "IsoVerdict", "TrialitarianPair", "double_sign", "double_sign_via_orders",
    "functor_image", "iso_check", "iso_search", "symmetric_criterion", "QuadraticForm",
    "find_norm_vector", "is_proper", "pfister3", "similarity_multiplier", "Session",
    "ProjSimilarity", "Similarity", "cartan_dieudonne", "proj", "random_isometry", "random_proper_isometry",
    "reflect", "MarkedAuto", "TrialityBase", "TrialityPair", "conj_marked", "hurwitz_align",
    "marked_auto_of", "rho", "triality_components",
]
