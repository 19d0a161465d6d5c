"""Periods of algebraic cycles on Fermat varieties and exact rank checks of period matrices."""

from .codim import codim, expected_rank_ci, expected_rank_ci_all_ones, expected_rank_linear_pair
from .combinatorics import (
    FermatParams,
    LinearCycle,
    enumerate_index_set,
    enumerate_linear_cycles,
    index_set_size,
    linear_cycle_count,
)
from .cyclotomic import CycElt, CycRational, CyclotomicField, admissible_primes, cyclotomic_polynomial, modular_embedding
from .matrix import LazyPeriodMatrix, MatrixFormatError, PeriodMatrix, build_matrix, dump, load, row_generation_check
from .periods import (
    CompleteIntersection,
    DegreeVector,
    LinearPair,
    PeriodValue,
    SingleCycle,
    ci_period,
    linear_cycle_period,
    pair_period,
)
from .rank import RankResult, compute_rank, rank_auto, rank_exact, rank_modular
from .suites import Report, SuiteConfig, VerificationCase, run_conjecture1_suite, run_prop3_suite, run_theorem2_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
