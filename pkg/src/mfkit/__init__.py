"""Matrix factorizations, their reductions modulo f, and the homological checks around them."""

from .correspondence import (ModulePresentation, Reconstruction, RoundtripReport, eisenbud_factorization,
                             faithfulness_nullhomotopy, fullness_reconstruct, lift_matrix_mod_f,
                             roundtrip_check, s_presentation)
from .errors import *  # noqa: F401,F403
from .factorization import (Homotopy, LinearFactorization, MfMorphism, compose, cone, direct_sum,
                            homotopic, identity_morphism, is_null_homotopic, morphism_generators, shift,
                            trivial_factorizations, validate_factorization, zero_factorization,
                            zero_morphism)
from .groebner import (GREVLEX, LEX, GroebnerBasis, groebner_basis, lift_through, matrix_syzygies,
                       normal_form, solve_matrix_equation, step_budget, syzygy_module)
from .homological import (ExtResult, FreeResolution, coker_ext_vanishing, ext_dimension,
                          free_resolution, rees_check_i, rees_check_ii, regularity_certificate)
from .matrix import PolyMatrix, divide_exact_by_f, mat_arith, reduce_matrix_mod
from .periodic import (PeriodicChainMap, PeriodicHomotopy, TwoPeriodicComplex, apply_T,
                       apply_T_morphism, coker_presentation, periodic_homotopic, shift_complex,
                       verify_acyclic, verify_total_acyclicity)
from .ring import GF, QQ, Poly, PolyRing
from .session import format_session, parse_session

__version__ = "0.1.0"
