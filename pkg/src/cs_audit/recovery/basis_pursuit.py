"""Equality-constrained l1 minimisation by ADMM with complex magnitude shrinkage."""
import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

import numba
import numpy as np
import scipy.linalg

from ..config import config
from ..core.matrix import DenseMatrix
from ..core.signal import SparseSignal
from ..errors import InvalidInputError, NumericalError
from ..robustness.rank import numeric_rank
from .result import RecoveryResult

logger = logging.getLogger(__name__)


@numba.njit(cache=True)
def complex_shrink(v: np.ndarray, kappa: float) -> np.ndarray:
    """
    Proximal map of kappa*|.|: v_i * max(0, 1 - kappa/|v_i|).

    On real input this is ordinary soft-thresholding.
    """
    out = np.zeros_like(v)
    for i in range(v.shape[0]):
        mag = abs(v[i])
        if mag > kappa:
            out[i] = v[i] * (1.0 - kappa / mag)
    return out


@numba.njit(cache=True)
def _norm(v: np.ndarray) -> float:
    acc = 0.0
    for i in range(v.shape[0]):
        acc += v[i].real * v[i].real + v[i].imag * v[i].imag
    return np.sqrt(acc)


@numba.njit(cache=True)
def _matvec(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.zeros(m.shape[0], dtype=np.complex128)
    for i in range(m.shape[0]):
        acc = 0j
        for j in range(m.shape[1]):
            acc += m[i, j] * v[j]
        out[i] = acc
    return out


@numba.njit(cache=True)
def admm_loop(proj: np.ndarray, offset: np.ndarray, a: np.ndarray, y: np.ndarray,
              rho: float, max_iter: int, tol_primal: float, tol_dual: float):
    """
    Scaled-form ADMM for min ||x||_1 s.t. a x = y.

    proj = I - pinv(a) a and offset = pinv(a) y project onto the affine set.
    Returns (z, iterations, primal residual, dual residual, converged).
    """
    n = proj.shape[0]
    z = np.zeros(n, dtype=np.complex128)
    u = np.zeros(n, dtype=np.complex128)
    kappa = 1.0 / rho
    r_norm = 0.0
    s_norm = 0.0
    iteration = 0
    while iteration < max_iter:
        iteration += 1
        x = _matvec(proj, z - u) + offset
        z_old = z
        z = complex_shrink(x + u, kappa)
        u = u + x - z
        r_norm = _norm(x - z)
        s_norm = rho * _norm(z - z_old)
        if r_norm <= tol_primal and s_norm <= tol_dual:
            if _norm(_matvec(a, z) - y) <= tol_primal:
                return z, iteration, r_norm, s_norm, True
    return z, iteration, r_norm, s_norm, False


@dataclass
class BasisPursuitParams:
    """Penalty and stopping rule for the ADMM solver."""

    rho: float = 1.0
    max_iter: int = 50000
    tol_primal: float = 1e-9
    tol_dual: float = 1e-9

    @classmethod
    def from_config(cls, **overrides) -> "BasisPursuitParams":
        section = config.get('recovery.basis_pursuit', {}) or {}
        values = {k: section[k] for k in ('rho', 'max_iter', 'tol_primal', 'tol_dual') if k in section}
        values.update({k: v for k, v in overrides.items() if v is not None})
        params = cls(**values)
        params.validate()
        return params

    def validate(self) -> None:
        if self.rho <= 0 or self.max_iter < 1 or self.tol_primal <= 0 or self.tol_dual <= 0:
            raise InvalidInputError(f"Invalid basis pursuit parameters: {self}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _affine_projector(matrix: np.ndarray, y: np.ndarray):
    """(I - A^+ A, A^+ y) with A^+ = A^* (A A^*)^{-1} from a Cholesky factor."""
    try:
        factor = scipy.linalg.cho_factor(matrix @ matrix.conj().T)
    except scipy.linalg.LinAlgError as e:
        raise NumericalError(f"A A^* is not positive definite: {e}")
    pinv = matrix.conj().T @ scipy.linalg.cho_solve(factor, np.eye(matrix.shape[0]))
    proj = np.eye(matrix.shape[1]) - pinv @ matrix
    offset = pinv @ y
    return np.ascontiguousarray(proj, dtype=np.complex128), np.ascontiguousarray(offset, dtype=np.complex128)


def basis_pursuit(a: DenseMatrix, y, params: Optional[BasisPursuitParams] = None) -> RecoveryResult:
    """
    Minimise sum |g_i| subject to a g = y.

    Raises:
        InvalidInputError: a lacks full row rank or y has the wrong length

    Returns:
        RecoveryResult with the dense solution; converged=False when max_iter was hit
    """
    params = params or BasisPursuitParams.from_config()
    params.validate()
    if numeric_rank(a) != a.rows:
        raise InvalidInputError(f"{a.label}: basis pursuit needs full row rank")
    matrix = np.ascontiguousarray(a.to_numpy(), dtype=np.complex128)
    y = np.ascontiguousarray(np.asarray(y, dtype=np.complex128).reshape(-1))
    if y.shape[0] != a.rows:
        raise InvalidInputError(f"Measurement length {y.shape[0]} != {a.label} rows {a.rows}")

    proj, offset = _affine_projector(matrix, y)
    z, iterations, r_norm, s_norm, converged = admm_loop(
        proj, offset, matrix, y, float(params.rho), int(params.max_iter),
        float(params.tol_primal), float(params.tol_dual))
    residual = float(np.linalg.norm(matrix @ z - y))
    support_tol = float(config.get('recovery.basis_pursuit.support_tolerance', 1e-6))
    sparse = SparseSignal.from_dense(z, support_tol)
    if not converged:
        logger.warning(f"basis pursuit on {a.label} stopped after {iterations} iterations "
                       f"(primal {r_norm:.2e}, dual {s_norm:.2e})")
    return RecoveryResult(
        method='basis_pursuit',
        residual_l2=residual,
        sparsity_found=sparse.norm0,
        converged=bool(converged),
        solutions=[sparse],
        dense=z,
        iterations=int(iterations),
    )


def warmup_kernels() -> None:
    """Compile the ADMM kernels on a 1 x 2 toy problem."""
    a = np.ones((1, 2), dtype=np.complex128)
    admm_loop(np.eye(2, dtype=np.complex128), np.zeros(2, dtype=np.complex128), a,
              np.zeros(1, dtype=np.complex128), 1.0, 1, 1.0, 1.0)
    complex_shrink(np.zeros(2), 0.5)
