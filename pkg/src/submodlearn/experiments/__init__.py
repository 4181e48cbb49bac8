"""Empirical verification suites."""
from .artifacts import write_artifacts, write_csv
from .characterization import CharacterizationCurve, characterization_curve
from .concentration import (
    MeanCheckResult,
    TailCheckResult,
    concentration_check,
    exact_profile_tails,
    mean_concentration_check,
    tail_check_from_values,
)
from .corpus import CorpusEntry, large_corpus, small_matroid_corpus
from .distributions import ProductDistribution, UniformFamilyDistribution, UniformSizeDistribution, sample_product
from .hardness import constrained_min_demo, st_cut_instance, vertex_cover_instance
from .lower_bound import LowerBoundResult, lower_bound_experiment
from .pmac import PmacResult, pmac_evaluate

__all__ = [
    "write_artifacts",
    "write_csv",
    "CharacterizationCurve",
    "characterization_curve",
    "MeanCheckResult",
    "TailCheckResult",
    "concentration_check",
    "exact_profile_tails",
    "mean_concentration_check",
    "tail_check_from_values",
    "CorpusEntry",
    "large_corpus",
    "small_matroid_corpus",
    "ProductDistribution",
    "UniformFamilyDistribution",
    "UniformSizeDistribution",
    "sample_product",
    "constrained_min_demo",
    "st_cut_instance",
    "vertex_cover_instance",
    "LowerBoundResult",
    "lower_bound_experiment",
    "PmacResult",
    "pmac_evaluate",
]
