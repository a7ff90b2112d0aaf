"""Exact arithmetic for the base-shifting digit map B_{M,N} and its sums."""

from .config import Config, ConfigurationError, get_config, load_config, override, set_config
from .cyclotomic import CyclotomicNumber, cyclotomic_poly, xi_power
from .digitmap import (
    DigitVector,
    InvalidBaseError,
    InvalidInputError,
    b_mod,
    b_sequence,
    base_shift,
    digits,
    from_digits,
    radical,
    radical_divides,
)
from .errors import InvalidParametersError, TheoremViolation
from .identities import IDENTITY_IDS, IdentityReport, beta, beta_by_convolution, build_G
from .periodicity import PeriodReport, analyze, conjecture_scan, minimal_period_bruteforce
from .polyring import MultiPoly, UniPoly, finite_difference, sum_over
from .pte import PteSolution, build_partition, certify, enumerate_solutions

__version__ = "0.1.0"
