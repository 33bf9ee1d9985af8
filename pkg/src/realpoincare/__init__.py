"""Real resolution data and real Poincare series of plane curve branches.

Library entry points:

    from realpoincare import analyze_text
    analysis = analyze_text("n = 4\\ny = i*t^4 + t^6 + t^7")
    analysis.invariants.M_sigma      # (4, 10, 21)
    analysis.series_bundle()         # P^S, P, P^R with expansions

The CLI lives in :mod:`realpoincare.cli`, the HTTP service in
:mod:`realpoincare.service`.
"""

from .branch import (
    BranchParam,
    char_exponents,
    conjugate,
    is_conjugation_invariant,
    is_real_branch,
    parse_branch,
    validate,
    value_of,
)
from .pipeline import (
    BranchAnalysis,
    analysis_report,
    analyze_branch,
    analyze_text,
    run_verification,
)
from .resolution import multiplicity_table, resolve, splitting_search

__version__ = "0.1.0"

__all__ = [
    "BranchAnalysis",
    "BranchParam",
    "analysis_report",
    "analyze_branch",
    "analyze_text",
    "char_exponents",
    "conjugate",
    "is_conjugation_invariant",
    "is_real_branch",
    "multiplicity_table",
    "parse_branch",
    "resolve",
    "run_verification",
    "splitting_search",
    "validate",
    "value_of",
    "__version__",
]
