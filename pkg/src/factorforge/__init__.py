"""Verification of group factorizations G = HK with permutation-group algorithms."""
__version__ = "0.1.0"

from .perm import Permutation, compose, inverse, element_order, parse_cycles, format_cycles
from .chain import (StabilizerChain, build_chain, orbit, orbits, transitivity_degree,
                    minimal_blocks, is_transitive)
from .gf import Field, MatrixOverField, field_make, matrix_group_to_permutations
from .catalog import (AssetError, GroupHandle, FactorizationCase, load_group, load_group_record,
                      load_cases, build_natural, build_psl2, build_holomorph_diagonal,
                      build_product_action_wreath)
from .factorize import (BudgetExhausted, FactorizationError, FactorizationVerdict,
                        canonical_coset_rep, coset_orbit, verify_factorization, descent_check)
from .recognize import (recognize_alternating, is_simple_mc, order_spectrum, normal_closure,
                        search_factor_subgroup, exhaustive_alternating_search, is_regular)
from .report import CaseResult, SuiteReport, run_case, run_cases

__all__ = [
    "Permutation", "compose", "inverse", "element_order", "parse_cycles", "format_cycles",
    "StabilizerChain", "build_chain", "orbit", "orbits", "transitivity_degree", "minimal_blocks",
    "is_transitive",
    "Field", "MatrixOverField", "field_make", "matrix_group_to_permutations",
    "AssetError", "GroupHandle", "FactorizationCase", "load_group", "load_group_record",
    "load_cases", "build_natural", "build_psl2", "build_holomorph_diagonal",
    "build_product_action_wreath",
    "BudgetExhausted", "FactorizationError", "FactorizationVerdict", "canonical_coset_rep",
    "coset_orbit", "verify_factorization", "descent_check",
    "recognize_alternating", "is_simple_mc", "order_spectrum", "normal_closure",
    "search_factor_subgroup", "exhaustive_alternating_search", "is_regular",
    "CaseResult", "SuiteReport", "run_case", "run_cases",
]
