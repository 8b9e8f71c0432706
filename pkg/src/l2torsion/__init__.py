"""Exact L2-torsion constants of closed odd-dimensional hyperbolic manifolds."""
from .exact_arith import ExactPolynomial, ExactRational, PiMonomial, RatInterval, pi_enclosure
from .logdet import fr_decomposition, logdet_closed, logdet_integral, verify_sign_lemma
from .plancherel import density_polynomial, heat_trace_numeric, heat_trace_terms
from .torsion import alpha, alpha_table, torsion, verify_growth

__all__ = [
    "ExactPolynomial",
    "ExactRational",
    "PiMonomial",
    "RatInterval",
    "alpha",
    "alpha_table",
    "density_polynomial",
    "fr_decomposition",
    "heat_trace_numeric",
    "heat_trace_terms",
    "logdet_closed",
    "logdet_integral",
    "pi_enclosure",
    "torsion",
    "verify_growth",
    "verify_sign_lemma",
]
