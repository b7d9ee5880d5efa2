"""Exact perturbative and deformational charts of affine hypersurfaces."""

from .flows import (
    Derivation,
    EndoFamily,
    Figure,
    GammaOperator,
    TangentModuleElem,
    apply_derivation,
    apply_endo,
    beta_field,
    gamma_action,
    gamma_beta_check,
    gamma_closed_form,
    gamma_generic,
)
from .morphisms import (
    GradedPart,
    NotInvariantError,
    Permutation,
    embed_sym,
    grade_decompose,
    is_invariant,
    retract,
    slot_permute,
    symmetrize,
)
from .parsing import ParseError, parse_poly
from .polynomial import Polynomial, RingColumn, dot, kernel_basis, partial_derivative, poly_eval
from .rings import DefElem, DefRingSpec, PertElem, PertRingSpec, invert_unit
from .solver import (
    ChartError,
    DefChart,
    Hypersurface,
    PertChart,
    SolutionParams,
    def_chart_build,
    def_chart_from_tangents,
    def_solve,
    pert_solve,
    residual,
    tangent_check,
    tangent_lift,
    verify_theorem,
)

__version__ = "0.1.0"
