"""Fractional-order differences and almost convergence, with the matrix
classes they induce, evaluated on finite truncations."""

from .almost import (AlmostLimitEstimate, AlmostVerdict, estimate_almost_limit,
                     lorentz_grid, make_generator)
from .classify import ClassificationReport, ClassVerdict, SpacePair, class_conditions, classify
from .conditions import ConditionReport, ConditionResult, Verdict, eval_condition
from .duality import DualReport, a_from_u, build_V, dual_check, u_transform
from .errors import DomainError, FracSumError, NameLookupError, ParseError, RangeError, SizeError
from .frac_coeff import (FracOrder, WeightVector, inverse_weights, partial_weight_sums,
                         weight_direct, weights)
from .operators import (RowFiniteMatrix, TriangularOperator, apply, build_builtin,
                        build_frac_delta, build_frac_delta_inverse, compose, transform_D,
                        transform_E)
from .sequence import TruncatedSequence
from .spaces import FdfReport, SpaceVerdict, fdf_membership, fdf_norm, iso_forward, iso_inverse

__version__ = "0.1.0"

__all__ = [
    "AlmostLimitEstimate", "AlmostVerdict", "ClassVerdict", "ClassificationReport",
    "ConditionReport", "ConditionResult", "DomainError", "DualReport", "FdfReport",
    "FracOrder", "FracSumError", "NameLookupError", "ParseError", "RangeError",
    "RowFiniteMatrix", "SizeError", "SpacePair", "SpaceVerdict", "TriangularOperator",
    "TruncatedSequence", "Verdict", "WeightVector", "a_from_u", "apply", "build_V",
    "build_builtin", "build_frac_delta", "build_frac_delta_inverse", "class_conditions",
    "classify", "compose", "dual_check", "estimate_almost_limit", "eval_condition",
    "fdf_membership", "fdf_norm", "inverse_weights", "iso_forward", "iso_inverse",
    "lorentz_grid", "make_generator", "partial_weight_sums", "transform_D", "transform_E",
    "u_transform", "weight_direct", "weights",
]
