"""Periodic quasi-complementary sequence sets (QCSSs).

Constructions from finite-field characters, interleaving and direct
root-of-unity families, exact correlation sweeps, and checks against the
Welch-type lower bound.
"""

from .analysis import optimality_ratio, ratio_trend, verify_declared
from .correlation import (CorrelationReport, measure_theta_max, pcf, pcf_sequence,
                          pcf_spectrum_fft)
from .field import (FieldContext, additive_char, build_field, gauss_sum, multiplicative_char)
from .generators import (Permutation, gen_prop1_family, gen_thm41_family, gen_thm41_row_deleted,
                         gen_thm42_family, smallest_prime_factor, solve_linear_congruence)
from .interleave import flatten, interleave, interleave_family
from .io import parse, serialize
from .model import (ComplementaryMatrix, PhaseExponentSequence, QcssFamily, SequenceFamily,
                    entry_value, qcss_lower_bound, welch_bound)

__all__ = [
    "ComplementaryMatrix", "CorrelationReport", "FieldContext", "Permutation",
    "PhaseExponentSequence", "QcssFamily", "SequenceFamily", "additive_char", "build_field",
    "entry_value", "flatten", "gauss_sum", "gen_prop1_family", "gen_thm41_family",
    "gen_thm41_row_deleted", "gen_thm42_family", "interleave", "interleave_family",
    "measure_theta_max", "multiplicative_char", "optimality_ratio", "parse", "pcf",
    "pcf_sequence", "pcf_spectrum_fft", "qcss_lower_bound", "ratio_trend", "serialize",
    "smallest_prime_factor", "solve_linear_congruence", "verify_declared", "welch_bound",
]
