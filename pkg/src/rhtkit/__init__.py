"""Exact rational computations with Sullivan algebras, homotopy Lie algebras,
their nilpotent groups and Lambda-extensions."""
from __future__ import annotations

from .ratlin import RatMatrix, Subspace, image, kernel, rank, rref, solve
from .gca import Derivation, Element, GradedSpace, apply_derivation, monomial_basis
from .sullivan import (LambdaAlgebra, SullivanAlgebra, SullivanError, SullivanMorphism, TruncationError,
                       cohomology, is_minimal, minimal_stable_subspace, quadratic_part, sullivan_filtration,
                       validate, vn_filtration_bracketed)
from .models import CdgaPresentation, builtin, minimal_model, verify_quasi_iso
from .lie import (GradedLieAlgebra, LieError, cce_dual, cce_roundtrip, check_jacobi, free_nilpotent_lie,
                  homotopy_lie_algebra, hurewicz, lcs, prop6_check, witt_number)
from .group import (ULTruncation, group_commutator, group_element, group_mul, lazard_check, nth_root,
                    series_action, whitehead)
from .extension import (LambdaExtension, acyclic_closure, eq16_check, holonomy, split_extension,
                        ul_dual_check)

__version__ = "0.1.0"

__all__ = [
    "RatMatrix",
    "Subspace",
    "image",
    "kernel",
    "rank",
    "rref",
    "solve",
    "Derivation",
    "Element",
    "GradedSpace",
    "apply_derivation",
    "monomial_basis",
    "LambdaAlgebra",
    "SullivanAlgebra",
    "SullivanError",
    "SullivanMorphism",
    "TruncationError",
    "cohomology",
    "is_minimal",
    "minimal_stable_subspace",
    "quadratic_part",
    "sullivan_filtration",
    "validate",
    "vn_filtration_bracketed",
    "CdgaPresentation",
    "builtin",
    "minimal_model",
    "verify_quasi_iso",
    "GradedLieAlgebra",
    "LieError",
    "cce_dual",
    "cce_roundtrip",
    "check_jacobi",
    "free_nilpotent_lie",
    "homotopy_lie_algebra",
    "hurewicz",
    "lcs",
    "prop6_check",
    "witt_number",
    "ULTruncation",
    "group_commutator",
    "group_element",
    "group_mul",
    "lazard_check",
    "nth_root",
    "series_action",
    "whitehead",
    "LambdaExtension",
    "acyclic_closure",
    "eq16_check",
    "holonomy",
    "split_extension",
    "ul_dual_check",
]
