"""Hochschild and cyclic (co)homology: one import point for the engine.

>>> from ncgkit.algebra import matrix_algebra
>>> [cohomology_dim("connes_cyclic", matrix_algebra(2), n) for n in range(4)]
[1, 0, 1, 0]
"""
from .cochains import (Chain, Cochain, OperatorKind, apply_operator, circle_product, cup_product,
                       cyclic_projection, gerstenhaber_bracket, hochschild_delta, is_cyclic,
                       is_normalized, multiplication_cochain, normalize_chain, normalize_cochain,
                       pair, random_chain, random_cochain, unit_cochain)
from .cyclic import (COMPLEXES, ComplexReport, CyclicModulePresentation, ModuleElement,
                     ValidationReport, algebra_cyclic_module, cohomology_dim, cohomology_report,
                     cyclic_dims, deformation_delta_matrix, periodic_dim, validate_cyclic_module)
from .hkr import check_hkr, hkr_maps, kaehler_forms
from .lazy import GroupAlgebraZ, LazyAlgebra, laurent_algebra

__all__ = [
    "Chain", "Cochain", "OperatorKind", "apply_operator", "circle_product", "cup_product",
    "cyclic_projection", "gerstenhaber_bracket", "hochschild_delta", "is_cyclic", "is_normalized",
    "multiplication_cochain", "normalize_chain", "normalize_cochain", "pair", "random_chain",
    "random_cochain", "unit_cochain", "COMPLEXES", "ComplexReport", "CyclicModulePresentation",
    "ModuleElement", "ValidationReport", "algebra_cyclic_module", "cohomology_dim",
    "cohomology_report", "cyclic_dims", "deformation_delta_matrix", "periodic_dim",
    "validate_cyclic_module", "check_hkr", "hkr_maps", "kaehler_forms", "GroupAlgebraZ",
    "LazyAlgebra", "laurent_algebra",
]
