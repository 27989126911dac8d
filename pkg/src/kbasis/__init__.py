"""Exact computer algebra for Khovanskii bases of quotient rings and
Newton-Okounkov bodies.

Everything is computed over Q with :class:`fractions.Fraction`; nothing is
ever rounded.
"""

from .linalg import (Lattice, RatMatrix, SingularMatrixError, hnf, invert,
                     lattice_from_generators, orthogonal_extension)
from .orders import (EQ, GT, LT, EliminationOrder, MonomialOrder, ValuationInducedOrder,
                     ValuationTable, ValueOrder, WeightOrder, compare, elimination, grevlex,
                     grlex, lex, valuation_induced_order)
from .polyring import (ParseError, Polynomial, PolynomialRing, RingMismatchError, leading_term,
                       parse_polynomial, substitute, two_leading_monomials)
from .groebner import (GroebnerBasis, Ideal, buchberger, is_groebner, is_standard_monomial,
                       kernel_of_map, normal_form, standard_monomials_up_to)
from .sagbi import (QuotientElement, QuotientLeadTerm, SubductionResult, ZeroClassError,
                    lead_term_quotient, minimality_reduce, reconstruct, standard_variable_set,
                    subduction, subduction_quotient)
from .khovanskii import (KhovanskiiCertificate, MonomialInIdealError, MuContext, MuValue,
                         attained_twice_check, build_mu_context, khovanskii_certificate, lattice_K,
                         lattice_K_from_valuation, leaves_check, mu, phi_transformation,
                         toric_exponent)
from .hull import Polytope, convex_hull, triangulate, volume
from .okounkov import (CertificateRefutedError, GradedValuation, NOBodyReport, affine_equivalence,
                       algorithm1_volume, direct_normalized_volume, extend_graded, nobody_direct,
                       random_orthogonal_extension)
from .session import Session, parse_session
from .cli import emit_svg, run, run_session

__all__ = [
    "Lattice", "RatMatrix", "SingularMatrixError", "hnf", "invert", "lattice_from_generators",
    "orthogonal_extension", "EQ", "GT", "LT", "EliminationOrder", "MonomialOrder",
    "ValuationInducedOrder", "ValuationTable", "ValueOrder", "WeightOrder", "compare",
    "elimination", "grevlex", "grlex", "lex", "valuation_induced_order", "ParseError",
    "Polynomial", "PolynomialRing", "RingMismatchError", "leading_term", "parse_polynomial",
    "substitute", "two_leading_monomials", "GroebnerBasis", "Ideal", "buchberger", "is_groebner",
    "is_standard_monomial", "kernel_of_map", "normal_form", "standard_monomials_up_to",
    "QuotientElement", "QuotientLeadTerm", "SubductionResult", "ZeroClassError",
    "lead_term_quotient", "minimality_reduce", "reconstruct", "standard_variable_set",
    "subduction", "subduction_quotient", "KhovanskiiCertificate", "MonomialInIdealError",
    "MuContext", "MuValue", "attained_twice_check", "build_mu_context", "khovanskii_certificate",
    "lattice_K", "lattice_K_from_valuation", "leaves_check", "mu", "phi_transformation",
    "toric_exponent", "Polytope", "convex_hull", "triangulate", "volume",
    "CertificateRefutedError", "GradedValuation", "NOBodyReport", "affine_equivalence",
    "algorithm1_volume", "direct_normalized_volume", "extend_graded", "nobody_direct",
    "random_orthogonal_extension", "Session", "parse_session", "emit_svg", "run", "run_session",
]

__version__ = "0.1.0"
