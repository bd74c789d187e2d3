"""Mutual coherence of two orthobases."""
import logging
import math

import numpy as np

from ..core.matrix import DenseMatrix
from ..errors import InvalidInputError

logger = logging.getLogger(__name__)


def _check_orthonormal(m: DenseMatrix, tol: float) -> None:
    data = m.to_numpy()
    gram = data @ data.conj().T
    deviation = np.abs(gram - np.eye(m.rows)).max(axis=1)
    bad = np.flatnonzero(deviation > tol)
    if bad.size:
        raise InvalidInputError(
            f"{m.label or 'basis'}: row {int(bad[0])} not orthonormal (deviation {deviation[bad[0]]:.2e})"
        )


def coherence(u: DenseMatrix, v: DenseMatrix, tol: float = 1e-10) -> float:
    """
    sqrt(n) times the largest |<u_i, v_j>| over rows of two n x n orthonormal bases.

    Raises:
        InvalidInputError: shapes differ, not square, or a row is not orthonormal
    """
    if u.shape != v.shape or u.rows != u.cols:
        raise InvalidInputError(f"coherence needs two n x n bases, got {u.shape} and {v.shape}")
    _check_orthonormal(u, tol)
    _check_orthonormal(v, tol)
    inner = u.to_numpy() @ v.to_numpy().conj().T
    mu = math.sqrt(u.rows) * float(np.max(np.abs(inner)))
    logger.debug(f"coherence({u.label}, {v.label}) = {mu:.6f}")
    return mu
