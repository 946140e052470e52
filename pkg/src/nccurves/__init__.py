"""Exact homological invariants of noncommutative curves.

Orbifold-curve divisor and K-theory arithmetic, slope stability and HN
pieces, Bridgeland central charges with a support-property check, Dynkin
recognition for acyclic quivers, and the five dimension invariants.
"""

from .classes import (
    CRVector,
    KClass,
    Smooth,
    Stacky,
    WeilDivisor,
    ch_orb,
    ch_orb_inverse,
    divisor_degree,
    dual,
    line_bundle_class,
    pushforward_floor,
    slope,
    tensor,
)
from .curve import (
    CurveSignature,
    DimensionReport,
    cr_rank,
    dimension_report,
    enumerate_negative_triples,
    negative_family,
    omega_degree,
)
from .errors import InvariantViolation, NCCurveError
from .hn import FilteredObject, dual_hn, hn_normalize, orlov_split, twist, vanishing_oracle
from .quiver import Quiver, classify, coxeter_number, gl_star_quiver, quiver_dimension_report
from .stability import StabParams, central_charge, check_support, min_h_for_epsilon, phase

__version__ = "0.1.0"
