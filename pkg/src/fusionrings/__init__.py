"""Exact computations with fusion rings.

Modeling, verification and enumeration of fusion rings with arithmetic in
real quadratic fields: Frobenius-Perron dimensions, universal gradings,
formal codegrees, and the center induction/twist obstruction that decides
categorifiability questions at the Grothendieck-ring level.
"""

from . import catalog
from .center import (
    CenterSummand,
    InductionProfile,
    ObstructionReport,
    TwistEquation,
    decomposition_branches,
    induction_profile,
    obstruct,
    solve_forgetful_images,
    twist_feasible,
    unit_summand_dims,
)
from .codegrees import CodegreeSpectrum, codegree_matrix, formal_codegrees
from .exactnum import (
    ComplexRoot,
    DivisionByZero,
    MixedRadicand,
    QuadNum,
    RankTooLarge,
    Rational,
    RealInterval,
    char_poly,
    factor_small,
    isolate_real_roots,
    quad_cmp,
    roots_as_quadnum,
)
from .rings import (
    FPDimVector,
    FusionRing,
    Grading,
    GradingInconsistent,
    SubBasis,
    ValidationError,
    axiom_violations,
    deligne_product,
    fpdim,
    invertibles,
    isomorphic,
    mul_combinations,
    relabel,
    stabilizer,
    subring_generated,
    tensor_expand,
    universal_grading,
    verify_axioms,
)
from .ringfile import ParseError, parse, serialize
from .search import (
    BudgetExceeded,
    SearchResult,
    SearchSpec,
    canonical_form,
    enumerate_rings,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CenterSummand",
    "CodegreeSpectrum",
    "ComplexRoot",
    "DivisionByZero",
    "FPDimVector",
    "FusionRing",
    "Grading",
    "GradingInconsistent",
    "InductionProfile",
    "MixedRadicand",
    "ObstructionReport",
    "ParseError",
    "QuadNum",
    "RankTooLarge",
    "Rational",
    "RealInterval",
    "SearchResult",
    "SearchSpec",
    "SubBasis",
    "TwistEquation",
    "ValidationError",
    "axiom_violations",
    "canonical_form",
    "catalog",
    "char_poly",
    "codegree_matrix",
    "decomposition_branches",
    "deligne_product",
    "enumerate_rings",
    "factor_small",
    "formal_codegrees",
    "fpdim",
    "induction_profile",
    "invertibles",
    "isolate_real_roots",
    "isomorphic",
    "mul_combinations",
    "obstruct",
    "parse",
    "quad_cmp",
    "relabel",
    "roots_as_quadnum",
    "serialize",
    "solve_forgetful_images",
    "stabilizer",
    "subring_generated",
    "tensor_expand",
    "twist_feasible",
    "unit_summand_dims",
    "universal_grading",
    "verify_axioms",
]
