"""Structure-constant toolkit for finite-dimensional compact quantum group algebras.

The package certifies, numerically, the full finite-dimensional theory of
Hopf *-algebras presented by structure constants: axiom suites, Haar
functionals, corepresentations and their decomposition, Clebsch-Gordan
systems, ordinary and twisted irreducible tensor operators in the right and
left regular coaction formalisms, Wigner-Eckart factorizations, and quantum
homogeneous spaces carried by coideal *-subalgebras.
"""

from .algebra import (Element, HopfAlgebraSpec, LinearFunctional, TensorElement,
                      build_dual, coproduct, counit_of, multiply, opposite_algebra,
                      unary_map, verify_dual_pairing, verify_hopf_axioms,
                      verify_star_axioms)
from .cg import (CGSystem, Character, character, character_orthogonality,
                 conjugate_multiplicity_symmetries, coupled_basis_functions,
                 multiplicity_in, solve_cg, tensor_product, verify_triple_haar)
from .corep import (Corepresentation, IrrepTable, are_equivalent, check_unitary,
                    compute_F, conjugate_corep, decompose_comodule,
                    doubly_contragredient, identity_corep, invariant_gram,
                    irrep_table, is_irreducible, morphism_space, unitarize,
                    verify_corep, verify_orthogonality)
from .groups import (GroupTable, build_function_algebra, build_group_algebra,
                     builtin_algebras, cyclic_group, symmetric_group_3)
from .haar import (GramPair, HaarFunctional, certify_haar, gram_matrices,
                   regular_unitarity_report, solve_haar, verify_haar_lemmas)
from .homspace import (CoidealSubalgebra, RestrictedBasisFunctions,
                       RestrictedOperatorFamily, build_coset_subalgebra,
                       canonical_restricted_candidates, check_restricted_family,
                       couple_restricted_families, restricted_coaction_report,
                       restricted_coaction_tensor, restricted_gram,
                       restricted_multiplication_family, restricted_we_tensor,
                       restricted_wigner_eckart, solve_restricted_basis_functions,
                       solve_restricted_family, subspace_coideal, verify_coideal)
from .regular import (BasisFunctionSet, basis_function_orthogonality,
                      canonical_basis_functions, check_basis_functions,
                      dual_action_crosscheck, product_coaction_check,
                      projection_completeness_residual, projection_operator,
                      regular_coaction, regular_coaction_tensor, regular_corep,
                      verify_projection_identities)
from .report import CheckResult, Report
from .tensor_ops import (VARIANTS, OperatorCoactionResult, TensorOperatorFamily,
                         apply_family_to_basis_functions, check_family,
                         coaction_on_operator, couple_families,
                         excluded_substitution_residual, family_report,
                         multiplication_family, operator_coaction_components,
                         operator_product_rule_residual, solve_family_space)
from .wigner_eckart import (WEReport, reduced_elements, verify_wigner_eckart,
                            we_tensor)

__version__ = "0.1.0"
