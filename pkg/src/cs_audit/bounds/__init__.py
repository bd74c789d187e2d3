"""Coherence, the sparsity budget and DCT sparsification."""
from .coherence import coherence
from .budget import (
    BoundQuery,
    MeasurementRequirement,
    SparsityBudget,
    max_sparsity,
    required_measurements,
)
from .sparsify import (
    SparsificationResult,
    dct_forward,
    dct_inverse,
    psnr,
    sparsify,
    synthetic_signal,
    write_comparison_csv,
)

__all__ = [
    'coherence', 'BoundQuery', 'MeasurementRequirement', 'SparsityBudget',
    'max_sparsity', 'required_measurements', 'SparsificationResult', 'dct_forward',
    'dct_inverse', 'psnr', 'sparsify', 'synthetic_signal', 'write_comparison_csv',
]
