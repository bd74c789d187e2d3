"""Shared domain types."""
from .precision import Precision, precision_context, realness_tolerance, rank_tolerance
from .cyclotomic import CyclotomicFrame
from .matrix import DenseMatrix
from .frequency_set import FrequencySet
from .signal import SparseSignal

__all__ = [
    'Precision', 'precision_context', 'realness_tolerance', 'rank_tolerance',
    'CyclotomicFrame', 'DenseMatrix', 'FrequencySet', 'SparseSignal',
]
