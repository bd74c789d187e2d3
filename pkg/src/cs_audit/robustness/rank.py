"""Singular values and numeric rank at either precision."""
import logging
from typing import List, Optional

import mpmath
import numpy as np
import scipy.linalg

from ..core.matrix import DenseMatrix
from ..core.precision import Precision, precision_context, rank_tolerance
from ..errors import InvalidInputError, NumericalError

logger = logging.getLogger(__name__)


def singular_values(a: DenseMatrix) -> List[float]:
    """
    Singular values in descending order (as Python floats).

    Raises:
        NumericalError: the SVD did not converge
    """
    if a.rows == 0 or a.cols == 0:
        raise InvalidInputError(f"{a.label}: empty matrix")
    try:
        if a.is_extended:
            with precision_context(a.precision):
                m = a.to_mpmath()
                values = mpmath.svd_r(m, compute_uv=False) if a.is_real else mpmath.svd_c(m, compute_uv=False)
                return sorted((float(v) for v in values), reverse=True)
        return scipy.linalg.svdvals(a.data).tolist()
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError, ZeroDivisionError, ValueError) as e:
        logger.error(f"SVD failed for {a.label}: {e}")
        raise NumericalError(f"SVD did not converge for {a.label}: {e}")


def numeric_rank(a: DenseMatrix, tau_rank: Optional[float] = None) -> int:
    """
    Count singular values above tau_rank times the largest one.

    Args:
        a: Nonempty matrix
        tau_rank: Relative cutoff (defaults to the precision's robustness.tau_rank)
    """
    if tau_rank is None:
        tau_rank = rank_tolerance(a.precision)
    values = singular_values(a)
    if not values or values[0] == 0.0:
        return 0
    cutoff = tau_rank * values[0]
    return sum(1 for v in values if v > cutoff)


def batch_dependence(stack: np.ndarray, tau_rank: float):
    """
    Vectorised dependence test for a batch of column subsets.

    Args:
        stack: (batch, rows, size) double array of submatrices, size <= rows
        tau_rank: Relative singular-value cutoff

    Returns:
        (dependent mask, smallest singular value per subset)
    """
    try:
        values = np.linalg.svd(stack, compute_uv=False)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"Batched SVD did not converge: {e}")
    top = values[:, 0]
    bottom = values[:, -1]
    return bottom <= tau_rank * top, bottom


def subset_dependence_extended(a: DenseMatrix, subset, tau_rank: float):
    """Extended-precision dependence test for one column subset."""
    values = singular_values(a.columns(subset))
    top, bottom = values[0], values[-1]
    return bottom <= tau_rank * top, bottom
