"""Exact symbolic calculus for the two-colored dg operads that encode a
pair of homotopy associative structures, two morphisms and a homotopy.

The pieces:

    trees      planar colored trees, composition, enumeration, the text
               grammar
    diff       generator differentials, Leibniz extension, the sign
               solver, d^2 checks
    linalg     exact rational sparse rank and kernel
    homology   arity-graded complexes and their cohomology
    strata     census of codimension-one boundary strata
    grading    graded bases, Koszul signs, map families, the shift
    coalgebra  truncated tensor-coalgebra lifts and identities
    relations  structure/morphism/homotopy checkers, representations
    cli        the dgop command
"""

from .trees import (
    SOLID, DASHED, FAMILIES,
    AINF_FAMILIES, MORINF_FAMILIES, HOINF_FAMILIES,
    Corolla, Tree, FormalSum, TreeError, TreeParseError, ColorMismatchError,
    compose, ocompose, corolla_tree, encode, enumerate_trees, leaf, node, parse,
)
from .diff import (
    SignConsistencyError, SignTable,
    d_squared_check, default_sign_table, derived_down_sign,
    diff_black, diff_down, diff_square, diff_tree, diff_white,
    down_descriptors, solve_down_signs,
)
from .linalg import SparseMatrix, kernel_basis, rank
from .grading import GradedBasis, MapFamily, koszul_sign, shift_conjugate
from .coalgebra import (
    ComponentTable, compose_tables,
    lift_coderivation, lift_homotopy, lift_morphism, verify_coalgebra_identity,
)
from .relations import (
    Structure, RepresentationError,
    bar_homotopy, bar_morphism, bar_stasheff,
    check_homotopy_relations, check_morphism_relations, check_stasheff,
    evaluate_sum, evaluate_tree,
    structure_from_json, structure_to_json,
)
from .homology import (
    ChainComplex, build_complex, cohomology_dims, euler_characteristic,
    verify_model_claims,
)
from .strata import Stratum, codim1_strata, strata_counts

__version__ = "0.1.0"
