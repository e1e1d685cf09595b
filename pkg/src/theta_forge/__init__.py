"""Exact toolkit for linear differential operators in the D and Δ = tD bases."""

from .diffop import (
    DOperator,
    ThetaOperator,
    TruncatedSeries,
    apply_d,
    apply_theta,
    connection_matrix,
    d_to_theta,
    stirling,
    theta_to_d,
)
from .newton import katz, polygon_d, polygon_theta
from .opparse import parse_linear_form, parse_op, parse_operator, parse_poly, print_operator
from .ratpoly import NEG_INF, Poly, Rational
from .siegel import (
    LinearForm,
    build_matrix,
    check_T1,
    check_T2,
    degree_profile,
    det_poly,
    iterate_d,
    iterate_theta,
    nonvanishing_report,
    predict_degree,
)

__version__ = "0.1.0"
