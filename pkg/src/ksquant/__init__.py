"""
ksquant

Exact Weyl and anti-Wick quantization of phase-space polynomials,
truncated-Fock phase-space numerics and Kochen-Specker colorability.
"""
from ksquant.parsing import parse_phase_expr, parse_operator_expr
from ksquant.quantmaps import quantize, symbol, ks2b_report
from ksquant.kscolor import load_vector_set, find_bases, search_valuation
from ksquant.verification import VerificationRunner

__all__ = [
    parse_phase_expr,
    parse_operator_expr,
    quantize,
    symbol,
    ks2b_report,
    load_vector_set,
    find_bases,
    search_valuation,
    VerificationRunner
]
