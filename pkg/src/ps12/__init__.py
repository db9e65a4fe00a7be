"""Simplex-spline S-bases on the Powell-Sabin 12-split.

Evaluation, differentiation, quasi-interpolation and smooth joins of
C^{d-1} splines of degree d = 0..3, with exact rational arithmetic for
verification and a float (optionally numba-compiled) path for sampling.
"""

from .calculus import (
    SIGMA,
    cartesian_partial,
    derivative_matrix,
    edge_derivative_restriction,
    eval_derivatives,
    eval_derivatives_many,
)
from .geometry import (
    REFERENCE_TRIANGLE,
    SYMMETRIES,
    Point2,
    SymmetryElement,
    Triangle,
    apply_symmetry,
    barycentric,
    cartesian,
    compose,
    directional,
    locate_subtriangle,
    split_points,
)
from .marsden import (
    collocation_matrix,
    condition_number,
    control_point_gap,
    domain_points,
    dual_polynomial_eval,
    dual_recurrence_residual,
    marsden_residual,
    qi_apply,
    qi_functional,
)
from .sbasis import (
    ALL_BASES,
    BasisId,
    LinearFormMatrix,
    SplineFunction,
    basis_dimension,
    bernstein_coeffs,
    eval_basis,
    eval_basis_many,
    get_basis,
    recursion_matrices,
    support,
)
from .simplex import (
    EdgeRestriction,
    KnotMultiset,
    WeightedCombination,
    canonical_form,
    enumerate_simplex_splines,
    knot_insert,
    min_smoothness_at,
    oracle_derivative,
    oracle_eval,
    restrict_to_edge,
)
from .smoothness import (
    JoinConfiguration,
    complete_join,
    join_map,
    joined_patch_eval,
    sigma_inverse,
    sigma_reorder,
    verify_join,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
