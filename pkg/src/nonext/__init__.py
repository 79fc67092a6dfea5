"""Nonextensive entropies (1 - sum p_i^q) / phi(q) and numerical checks of their axioms."""

from .axioms import (
    CheckReport,
    check_expandability,
    check_maximality,
    check_pseudoadditivity,
    check_shannon_additivity,
    check_shannon_limit,
    check_symmetry,
)
from .distributions import (
    Distribution,
    ProductSystem,
    Refinement,
    conditional,
    expand,
    new_distribution,
    product,
    random_distribution,
    random_refinement,
    rational_approx,
    refine,
    uniform,
)
from .entropy import (
    generalized_entropy,
    havrda_charvat,
    normalized_tsallis,
    shannon,
    tsallis,
    uniform_entropy,
)
from .phi import PhiSpec, PhiValidationReport, builtin_phi, phi_derivative, poly_phi, validate_phi
from .reconstruction import (
    RationalDistribution,
    check_functional_equation,
    reconstruct_rational,
    uniqueness_check,
)

__version__ = "0.1.0"
