"""Toolkit for the iterated process a_{j+1} = n mod a_j.

Computes orbits, Pierce digit expansions, and the step-count maximum P(n)
at scale; profiles how orbits occupy dyadic bands and certifies the
structural relations that govern them; carries out the exact rational
exponent arithmetic behind the step-count bounds; and builds witnesses
that force provably long orbits.  Exact arithmetic everywhere a verdict is
rendered, compiled kernels everywhere throughput matters.
"""

from ._version import __version__
from .dyadic import (
    BoundFit,
    DyadicProfile,
    TwoStepCert,
    bucket_exponent,
    certificates,
    check_arch_bound,
    check_divisibility,
    check_quotient_monotone,
    default_survey_h,
    max_band_statistic,
    profile,
    residual_survey,
    sqrt_bound_fit,
    two_step_decompose,
)
from .euler import Bracket, inv_e_bracket
from .exponents import (
    BudgetReport,
    ExponentPoint,
    check_k2_expansion,
    exponent_budget,
    gamma,
    maximize_min_forms,
    optimize_gamma,
)
from .pmax import (
    CounterOverflowError,
    PmaxResult,
    ResourceError,
    pmax_dp,
    pmax_naive,
    steps_table,
)
from .records import RecordTable, ScanConfig, scan_records
from .suites import run_suites
from .trajectory import (
    CapExceededError,
    DomainError,
    InvalidExpansionError,
    PierceExpansion,
    Trajectory,
    mod_step,
    pierce_digits,
    reconstruct,
    steps_count,
    trajectory,
)
from .witness import (
    ArithmeticWitness,
    WitnessReport,
    archimedean_start,
    arithmetic_witness,
    check_elementary_inequality,
    predicted_b,
    validate_witness,
)

__all__ = [
    "ArithmeticWitness",
    "BoundFit",
    "Bracket",
    "BudgetReport",
    "CapExceededError",
    "CounterOverflowError",
    "DomainError",
    "DyadicProfile",
    "ExponentPoint",
    "InvalidExpansionError",
    "PierceExpansion",
    "PmaxResult",
    "RecordTable",
    "ResourceError",
    "ScanConfig",
    "Trajectory",
    "TwoStepCert",
    "WitnessReport",
    "__version__",
    "archimedean_start",
    "arithmetic_witness",
    "bucket_exponent",
    "certificates",
    "check_arch_bound",
    "check_divisibility",
    "check_elementary_inequality",
    "check_k2_expansion",
    "check_quotient_monotone",
    "default_survey_h",
    "exponent_budget",
    "gamma",
    "max_band_statistic",
    "maximize_min_forms",
    "mod_step",
    "optimize_gamma",
    "pierce_digits",
    "pmax_dp",
    "pmax_naive",
    "predicted_b",
    "profile",
    "reconstruct",
    "residual_survey",
    "run_suites",
    "scan_records",
    "sqrt_bound_fit",
    "steps_count",
    "steps_table",
    "trajectory",
    "two_step_decompose",
    "validate_witness",
]
