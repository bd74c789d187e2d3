"""Maximal robustness and spark of frames, floating and exact."""
from .rank import numeric_rank, singular_values
from .exact import exact_rank_cyclotomic
from .maximal import Mode, RobustnessReport, SparkResult, maximal_robustness, spark
from .subsets import colex_rank, colex_unrank, warmup_kernels

__all__ = [
    'numeric_rank', 'singular_values', 'exact_rank_cyclotomic',
    'Mode', 'RobustnessReport', 'SparkResult', 'maximal_robustness', 'spark',
    'colex_rank', 'colex_unrank', 'warmup_kernels',
]
