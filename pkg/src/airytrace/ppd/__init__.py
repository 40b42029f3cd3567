"""Primitive prime divisors for Suzuki and Ree tori, and the supporting counts."""

from .diophantine import diophantine_check, phi_bounds_check, phi_bounds_violations
from .equi import coprime_residue_count, equi2_check, equi_check
from .numtheory import certify_ppd, jacobi, multiplicative_order
from .products import (f_at_one_certified, f_at_one_closed, f_at_one_lemma, f_eval, increasing_lemma_holds, p2,
                       p2_certified, p3, p3_pair)
from .tori import ToriReport, sweep, verify_suzuki2, verify_tori

__all__ = [
    "ToriReport", "certify_ppd", "coprime_residue_count", "diophantine_check", "equi2_check",
    "equi_check", "f_at_one_certified", "f_at_one_closed", "f_at_one_lemma", "f_eval", "increasing_lemma_holds",
    "jacobi", "multiplicative_order", "p2", "p2_certified", "p3", "p3_pair", "phi_bounds_check",
    "phi_bounds_violations", "sweep", "verify_suzuki2", "verify_tori",
]
