"""Exact rational interval geometry and the constructions built on it.

Everything in this package computes with ``fractions.Fraction``; there is no
floating point and every reported measure, endpoint and certificate is exact.
"""

from affcopy.avoider import (AvoiderConstruction, EmbeddingCertificate,
                             EmbeddingSearchError, ThresholdSequence, build_avoider,
                             delta0_of, enumerate_base, find_embedding,
                             measure_union_translates, plan_budget,
                             summability_report, thresholdize)
from affcopy.cantor import (CantorConstruction, FinitePointsOracle, GapOracle,
                            MiddleThirdOracle, OracleViolationError,
                            TernaryCantorOracle, build_cantor, truncated_union_cover,
                            verify_cantor)
from affcopy.intervals import (EMPTY, Interval, IntervalSet, as_fraction, normalize,
                               union_all)
from affcopy.mixedradix import (DigitVector, MixedRadixSystem, NestedChain,
                                branch_index, check_h_condition, default_schedule,
                                digits_of, f_membership, make_system,
                                nested_intersect, premeasure_bound)
from affcopy.slowseq import (HorizonError, SlowSequence, TranslateDecomposition,
                             build_mu, coverage01, decompose_translates,
                             threshold_index, verify_slow_decay)

__all__ = [
    "AvoiderConstruction",
    "CantorConstruction",
    "DigitVector",
    "EMPTY",
    "EmbeddingCertificate",
    "EmbeddingSearchError",
    "FinitePointsOracle",
    "GapOracle",
    "HorizonError",
    "Interval",
    "IntervalSet",
    "MiddleThirdOracle",
    "MixedRadixSystem",
    "NestedChain",
    "OracleViolationError",
    "SlowSequence",
    "TernaryCantorOracle",
    "ThresholdSequence",
    "TranslateDecomposition",
    "as_fraction",
    "branch_index",
    "build_avoider",
    "build_cantor",
    "build_mu",
    "check_h_condition",
    "coverage01",
    "decompose_translates",
    "default_schedule",
    "delta0_of",
    "digits_of",
    "enumerate_base",
    "f_membership",
    "find_embedding",
    "make_system",
    "measure_union_translates",
    "nested_intersect",
    "normalize",
    "plan_budget",
    "premeasure_bound",
    "summability_report",
    "threshold_index",
    "thresholdize",
    "truncated_union_cover",
    "union_all",
    "verify_cantor",
    "verify_slow_decay",
]
