"""Integer-valued polynomials on matrix algebras over discrete valuation rings.

The package provides exact arithmetic over Z localized at p and over
F_q[t] localized at t, membership tests for the integer-valued
polynomial ring on n x n matrices and its integral closure, null-ideal
computations, and the quaternion-order comparison for n = 2.
"""

from .construct import (
    ConstructionBundle,
    PsiBundle,
    check_phi_factorisation,
    construct_F,
    construct_psi,
    phi,
    phi_degree,
    theta,
)
from .dvr import (
    FQT,
    ZP,
    DvrContext,
    NonPrime,
    PrecisionIncrease,
    ReducibleModulus,
    make_context,
)
from .membership import (
    HypothesisViolation,
    closure_membership,
    closure_profile,
    ideal_congruence,
    int_matrix_membership,
    mu_table,
    properly_integral,
    residue_class_family,
)
from .nullideal import (
    SearchExhausted,
    lcm_primary,
    minimal_monic_degree,
    null_membership,
    phi_k_degrees,
    verify_phi_theorem,
)
from .poly import (
    KPoly,
    RPoly,
    VPoly,
    kpoly,
    kpoly_from_json,
    kpoly_to_json,
    parse_poly_text,
    poly_text,
    rpoly,
    vpoly,
    vpoly_from_ints,
    vpoly_x,
)
from .quat import (
    HURWITZ,
    LIPSCHITZ,
    NoSolution,
    QuatIso,
    QuatR,
    UnexpectedVanishing,
    find_iso,
    order_min_monic_degree,
    quat_membership_failure,
)
from .reports import (
    FailureWitness,
    LcmPrimaryReport,
    MembershipVerdict,
    NullIdealReport,
    PhiTheoremReport,
    PiSequenceTable,
    ProperIntegralVerdict,
)

__all__ = [
    "FQT",
    "HURWITZ",
    "LIPSCHITZ",
    "ZP",
    "ConstructionBundle",
    "DvrContext",
    "FailureWitness",
    "HypothesisViolation",
    "KPoly",
    "LcmPrimaryReport",
    "MembershipVerdict",
    "NonPrime",
    "NoSolution",
    "NullIdealReport",
    "PhiTheoremReport",
    "PiSequenceTable",
    "PrecisionIncrease",
    "ProperIntegralVerdict",
    "PsiBundle",
    "QuatIso",
    "QuatR",
    "RPoly",
    "ReducibleModulus",
    "SearchExhausted",
    "UnexpectedVanishing",
    "VPoly",
    "check_phi_factorisation",
    "closure_membership",
    "closure_profile",
    "construct_F",
    "construct_psi",
    "find_iso",
    "ideal_congruence",
    "int_matrix_membership",
    "kpoly",
    "kpoly_from_json",
    "kpoly_to_json",
    "lcm_primary",
    "make_context",
    "minimal_monic_degree",
    "mu_table",
    "null_membership",
    "order_min_monic_degree",
    "parse_poly_text",
    "phi",
    "phi_degree",
    "phi_k_degrees",
    "poly_text",
    "properly_integral",
    "quat_membership_failure",
    "residue_class_family",
    "rpoly",
    "theta",
    "verify_phi_theorem",
    "vpoly",
    "vpoly_from_ints",
    "vpoly_x",
]

__version__ = "0.1.0"
