"""Weak mutually unbiased bases in H(p1*p2), maximal lines of Z(d) x Z(d), and
the zeros of their theta-function representations."""

from .bases import BasisLabel, WmubBasis, all_labels, enumerate_wmubs, predicted_overlap, wmub_basis, wmub_vector
from .errors import (
    DimensionMismatch,
    InvalidDimension,
    NonconvergentParameter,
    NotInvertible,
    NotMaximal,
    NotSymplectic,
    OverlapMismatch,
    QuadratureNotConverged,
    SameBasis,
    SameLine,
    TrialityViolation,
    WmubError,
    ZeroResidualTooLarge,
)
from .geometry import Line, common_points, enumerate_lines, line, line_for_label
from .hilbert import StateVector
from .modring import CrtContext, ModInt, crt_context
from .symplectic import SymplecticParams, symplectic_operator
from .theta import AnalyticRepr, ClosedFormTheta, ZeroLine, analytic_repr, theta3, wmub_closed_form, zero_line
from .triality import TrialityRecord, ZeroLineSet, build_triality, verify_intersections

__version__ = "0.1.0"

__all__ = [
    "AnalyticRepr",
    "BasisLabel",
    "ClosedFormTheta",
    "CrtContext",
    "DimensionMismatch",
    "InvalidDimension",
    "Line",
    "ModInt",
    "NonconvergentParameter",
    "NotInvertible",
    "NotMaximal",
    "NotSymplectic",
    "OverlapMismatch",
    "QuadratureNotConverged",
    "SameBasis",
    "SameLine",
    "StateVector",
    "SymplecticParams",
    "TrialityRecord",
    "TrialityViolation",
    "WmubBasis",
    "WmubError",
    "ZeroLine",
    "ZeroLineSet",
    "ZeroResidualTooLarge",
    "all_labels",
    "analytic_repr",
    "build_triality",
    "common_points",
    "crt_context",
    "enumerate_lines",
    "enumerate_wmubs",
    "line",
    "line_for_label",
    "predicted_overlap",
    "symplectic_operator",
    "theta3",
    "verify_intersections",
    "wmub_basis",
    "wmub_closed_form",
    "wmub_vector",
    "zero_line",
]
