"""Decision procedures and the property report."""
from .concordance import ConcordanceResult, concordance, verify_witness
from .injectivity import InjectivityResult, injectivity_determinant, mstar_determinant
from .plp import (
    PLPDescription,
    acr_species,
    curve_multiplicity,
    plp_from_ldc,
    realizable_patterns,
    sign_realizable,
    verify_linear_conjugacy,
)
from .report import PropertyReport, ReportContext, analyze, compare, derive, differences, summary_row

__all__ = [
    "ConcordanceResult",
    "InjectivityResult",
    "PLPDescription",
    "PropertyReport",
    "ReportContext",
    "acr_species",
    "analyze",
    "compare",
    "concordance",
    "curve_multiplicity",
    "derive",
    "differences",
    "injectivity_determinant",
    "mstar_determinant",
    "plp_from_ldc",
    "realizable_patterns",
    "sign_realizable",
    "summary_row",
    "verify_linear_conjugacy",
    "verify_witness",
]
