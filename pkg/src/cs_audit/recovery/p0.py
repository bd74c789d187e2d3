"""Brute-force l0 minimisation and per-signal uniqueness."""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np
import scipy.linalg

from ..config import config
from ..core.matrix import DenseMatrix
from ..core.signal import SparseSignal
from ..errors import InvalidInputError, NumericalError
from ..robustness.subsets import iter_colex_batches, subset_count
from .measurement import measure
from .result import RecoveryResult

logger = logging.getLogger(__name__)

UNIQUE = 'unique'
NOT_UNIQUE = 'not_unique'
UNDECIDED = 'undecided'


def _restricted_lstsq(sub: np.ndarray, y: np.ndarray, real_only: bool) -> np.ndarray:
    """Minimum-norm least squares on one support (rank-deficient supports allowed)."""
    try:
        if real_only:
            stacked = np.vstack([sub.real, sub.imag])
            rhs = np.concatenate([y.real, y.imag])
            g, *_ = scipy.linalg.lstsq(stacked, rhs, lapack_driver='gelsd')
            return g.astype(np.complex128)
        g, *_ = scipy.linalg.lstsq(sub, y, lapack_driver='gelsd')
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise NumericalError(f"Least squares on a {sub.shape[0]}x{sub.shape[1]} support failed: {e}")
    return g


def p0_solve(a: DenseMatrix, y, s_max: int, tau_feas: Optional[float] = None,
             max_solutions: Optional[int] = None, real_only: bool = False) -> RecoveryResult:
    """
    Enumerate supports by increasing size and return every minimiser at the first feasible size.

    Args:
        a: Measurement matrix
        y: Measurements (length a.rows)
        s_max: Largest support size tried (<= a.rows)
        tau_feas: Feasibility threshold on ||a g - y||_2
        max_solutions: Cap on stored minimisers (overflow flag set beyond it)
        real_only: Restrict g to real vectors

    Returns:
        RecoveryResult; feasible=False when no support up to s_max fits
    """
    tau_feas = float(config.get('recovery.tau_feas')) if tau_feas is None else tau_feas
    max_solutions = int(config.get('recovery.max_solutions', 64)) if max_solutions is None else max_solutions
    margin = float(config.get('recovery.near_miss_margin', 10.0))
    batch_size = int(config.get('robustness.batch_size', 4096))
    if not 0 <= s_max <= a.rows:
        raise InvalidInputError(f"s_max must lie in [0, {a.rows}], got {s_max}")
    matrix = a.to_numpy().astype(np.complex128)
    y = np.asarray(y, dtype=np.complex128).reshape(-1)
    if y.shape[0] != a.rows:
        raise InvalidInputError(f"Measurement length {y.shape[0]} != {a.label} rows {a.rows}")

    enumerated = 0
    near_misses = 0
    best_residual = float(np.linalg.norm(y))
    for size in range(0, s_max + 1):
        found: List[SparseSignal] = []
        residuals: List[float] = []
        overflow = False
        total = subset_count(a.cols, size)
        for _, batch in iter_colex_batches(a.cols, size, 0, total, batch_size):
            for support in batch:
                enumerated += 1
                idx = support.tolist()
                if idx:
                    g = _restricted_lstsq(matrix[:, idx], y, real_only)
                    residual = float(np.linalg.norm(matrix[:, idx] @ g - y))
                else:
                    g = np.zeros(0, dtype=np.complex128)
                    residual = float(np.linalg.norm(y))
                best_residual = min(best_residual, residual)
                if residual > tau_feas:
                    if residual <= margin * tau_feas:
                        near_misses += 1
                    continue
                if np.any(g == 0):
                    continue  # effectively sparser; already covered by smaller sizes
                if len(found) >= max_solutions:
                    overflow = True
                    continue
                found.append(SparseSignal(a.cols, tuple(idx), tuple(g.tolist())))
                residuals.append(residual)
        if found:
            logger.debug(f"p0 on {a.label}: sparsity {size}, {len(found)} minimiser(s), "
                         f"{enumerated} supports")
            return RecoveryResult(
                method='p0',
                residual_l2=max(residuals),
                sparsity_found=size,
                converged=True,
                solutions=found,
                supports_enumerated=enumerated,
                overflow=overflow,
                near_misses=near_misses,
            )
    logger.info(f"p0 on {a.label}: no feasible support up to size {s_max}")
    return RecoveryResult(
        method='p0',
        residual_l2=best_residual,
        sparsity_found=-1,
        converged=False,
        supports_enumerated=enumerated,
        feasible=False,
        near_misses=near_misses,
    )


@dataclass
class UniquenessVerdict:
    """Whether a signal is the only sparsest solution of its own measurements."""

    verdict: str
    signal: SparseSignal
    certificate: Optional[SparseSignal]
    result: RecoveryResult

    def to_dict(self) -> Dict[str, Any]:
        return {
            'verdict': self.verdict,
            'signal': self.signal.to_dict(),
            'certificate': self.certificate.to_dict() if self.certificate else None,
            'result': self.result.to_dict(),
        }


def _same_signal(g: SparseSignal, f: SparseSignal, tol: float) -> bool:
    if g.support != f.support:
        return False
    if not f.support:
        return True
    scale = max(1.0, max(abs(v) for v in f.values))
    return all(abs(u - v) <= tol * scale for u, v in zip(g.values, f.values))


def uniqueness_check(a: DenseMatrix, f: SparseSignal, tau_feas: Optional[float] = None,
                     real_only: bool = False) -> UniquenessVerdict:
    """
    Decide whether f is the unique sparsest vector consistent with a @ f.

    Verdict is 'undecided' when f is the only solution found but some support of
    size <= ||f||_0 missed feasibility by less than the near-miss margin.

    Raises:
        NumericalError: f does not fit its own measurements
    """
    tau_feas = float(config.get('recovery.tau_feas')) if tau_feas is None else tau_feas
    if 2 * f.norm0 > a.rows:
        logger.debug(f"uniqueness_check: 2*||f||_0={2 * f.norm0} exceeds {a.rows} rows")
    y = measure(a, f)
    result = p0_solve(a, y, f.norm0, tau_feas, real_only=real_only)
    if not result.feasible:
        raise NumericalError(
            f"{a.label}: signal with support {f.support} is infeasible against its own measurements")

    rivals = [g for g in result.solutions if not _same_signal(g, f, tau_feas)]
    if result.sparsity_found < f.norm0 or rivals or result.overflow:
        certificate = rivals[0] if rivals else result.solutions[0]
        return UniquenessVerdict(NOT_UNIQUE, f, certificate, result)
    if result.near_misses:
        return UniquenessVerdict(UNDECIDED, f, None, result)
    return UniquenessVerdict(UNIQUE, f, None, result)
