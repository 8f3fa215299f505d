"""Exact valuation-polygon analysis of finite morphisms between subdomains
of the Berkovich projective line, with Riemann-Hurwitz checks."""

from .berkdomain import (
    CLOSED,
    GAUSS_POINT,
    OPEN,
    DiscSpec,
    FtDomainP1,
    TypeTwoPoint,
    closed_unit_disc,
    disc_contains,
    discs_disjoint,
    domain_validate,
    euler_char,
    point_in_domain,
    projective_line,
    skeleton_image_probe,
    vnorm_at_point,
)
from .exactval import INF, INFTY, DegenerateInputError, InputError, padic_val, valq_affine
from .laurent import LaurentPoly, RationalMap, compose, derivative, invert_coordinate, sub_const, taylor_shift, wronskian
from .ledger import TriangGraph, assemble_global_rh, check_additivity, check_edge_cancellation
from .ramification import (
    GermData,
    TangentDirection,
    compose_germ,
    count_critical,
    degree_over,
    different_value,
    discriminant_value,
    germ_data,
    invert_germ,
    local_sum_check,
)
from .rhcheck import MorphismSpec, RHReport, char_p_divisor, check_rh, sigma_vs_chi, validate_morphism
from .valpolygon import (
    ValPolygon,
    achieving_range,
    build_polygon,
    count_zero_valuations,
    dominant_exponent,
    eval_V,
    is_invertible_on,
)

__version__ = "0.1.0"
