"""Clifford algebras Cl_{p,q}, their Pin and Spin groups, and the period-8 classification."""
from .core import (
    DEFAULT_TOL,
    Multivector,
    Signature,
    Tolerance,
    blade_product,
    conjugation,
    from_json,
    from_text,
    geometric_product,
    grade_involution,
    grade_projection,
    inverse,
    norm,
    reversal,
    to_json,
    to_text,
)
from .errors import CliffordError
from .groups import (
    GroupElement,
    GroupKind,
    is_in_clifford_group,
    is_pin,
    is_spin,
    reflection_matrix,
    rho_matrix,
    twisted_adjoint,
)
from .isometry import (
    PseudoOrthogonalMatrix,
    component_of,
    factor_into_reflections,
    lift_to_pin,
    polar_decompose,
    random_pseudo_orthogonal,
    spin_path,
)
from .structure import AlgebraClass, FiniteAlgebra, classify, classify_complex

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "Multivector",
    "Signature",
    "Tolerance",
    "blade_product",
    "conjugation",
    "from_json",
    "from_text",
    "geometric_product",
    "grade_involution",
    "grade_projection",
    "inverse",
    "norm",
    "reversal",
    "to_json",
    "to_text",
    "CliffordError",
    "GroupElement",
    "GroupKind",
    "is_in_clifford_group",
    "is_pin",
    "is_spin",
    "reflection_matrix",
    "rho_matrix",
    "twisted_adjoint",
    "PseudoOrthogonalMatrix",
    "component_of",
    "factor_into_reflections",
    "lift_to_pin",
    "polar_decompose",
    "random_pseudo_orthogonal",
    "spin_path",
    "AlgebraClass",
    "FiniteAlgebra",
    "classify",
    "classify_complex",
]
