"""Exact Frobenius traces of Airy sheaves over binary fields, with the
supporting number theory for Suzuki and Ree tori."""

from .airy import (SheafSpec, g8, infg_family, monomial, suzuki_standard, t_of_q, trace_F,
                   trace_G)
from .census import CensusReport, census_for_G, census_naive, census_wht
from .exactnum import ClearedValue, GaussInt, abs_square
from .gf2m import FieldCtx, FieldError, make_field

__version__ = "0.1.0"

__all__ = [
    "CensusReport", "ClearedValue", "FieldCtx", "FieldError", "GaussInt", "SheafSpec",
    "abs_square", "census_for_G", "census_naive", "census_wht", "g8", "infg_family",
    "make_field", "monomial", "suzuki_standard", "t_of_q", "trace_F", "trace_G",
]
