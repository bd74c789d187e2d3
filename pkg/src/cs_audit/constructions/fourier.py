"""Partial Fourier matrix, the realifier Q and the real frame Phi = Psi Q*."""
import logging
import math

import mpmath
import numpy as np

from ..core.cyclotomic import CyclotomicFrame
from ..core.frequency_set import FrequencySet
from ..core.matrix import DenseMatrix
from ..core.precision import Precision, precision_context
from ..errors import InvalidInputError

logger = logging.getLogger(__name__)


def psi_label(modulus: int) -> str:
    return f"psi(N={modulus})"


def q_label(modulus: int) -> str:
    return f"q(N={modulus})"


def phi_label(modulus: int) -> str:
    return f"phi(N={modulus})"


def _unit_root_powers(phases: np.ndarray, modulus: int, precision: Precision) -> np.ndarray:
    """exp(2 pi j p / N) for an integer array p already reduced mod N."""
    if precision is Precision.DOUBLE:
        return np.exp(2j * np.pi * phases / modulus)
    out = np.empty(phases.shape, dtype=object)
    for idx, p in np.ndenumerate(phases):
        ratio = mpmath.mpf(2 * int(p)) / modulus
        out[idx] = mpmath.mpc(mpmath.cospi(ratio), mpmath.sinpi(ratio))
    return out


def partial_fourier(modulus: int, omega: FrequencySet, precision=None) -> DenseMatrix:
    """
    Rows of the unitary N x N DFT indexed by omega, in ascending frequency order.

    Entry (t, x) is w^{t x} / sqrt(N) with w = exp(2 pi j / N).
    """
    precision = Precision.parse(precision)
    if omega.modulus != modulus:
        raise InvalidInputError(f"Frequency set modulus {omega.modulus} != N={modulus}")
    t = np.array(omega.indices, dtype=np.int64)[:, None]
    x = np.arange(modulus, dtype=np.int64)[None, :]
    phases = (t * x) % modulus  # exact reduction keeps angles small
    with precision_context(precision):
        data = _unit_root_powers(phases, modulus, precision)
        data = data / (np.sqrt(modulus) if precision is Precision.DOUBLE else mpmath.sqrt(modulus))
    return DenseMatrix(data, precision, False, psi_label(modulus),
                       CyclotomicFrame.partial_dft(modulus, omega.indices))


def realifier_q(modulus: int, precision=None) -> DenseMatrix:
    """
    Unitary N x N block matrix [[1,0,0],[0,I/sqrt2,J/sqrt2],[0,jI/sqrt2,-jJ/sqrt2]].

    J is the k x k reversal matrix and N = 2k + 1.

    Raises:
        InvalidInputError: N even or smaller than 3
    """
    precision = Precision.parse(precision)
    if modulus < 3 or modulus % 2 == 0:
        raise InvalidInputError(f"Q needs an odd N >= 3, got {modulus}")
    k = (modulus - 1) // 2
    with precision_context(precision):
        if precision is Precision.DOUBLE:
            data = np.zeros((modulus, modulus), dtype=np.complex128)
            h = 1.0 / math.sqrt(2.0)
            one, jh = 1.0, 1j * h
        else:
            data = np.full((modulus, modulus), mpmath.mpc(0), dtype=object)
            h = 1 / mpmath.sqrt(2)
            one, jh = mpmath.mpc(1), mpmath.mpc(0, h)
        data[0, 0] = one
        for i in range(k):
            mirror = k + 1 + (k - 1 - i)
            data[1 + i, 1 + i] = h
            data[1 + i, mirror] = h
            data[k + 1 + i, 1 + i] = jh
            data[k + 1 + i, mirror] = -jh
    return DenseMatrix(data, precision, False, q_label(modulus))


def realify(psi: DenseMatrix, q: DenseMatrix) -> DenseMatrix:
    """
    Phi = Psi Q*, checked to be real and returned tagged real.

    Column layout: constant, cosines c(i t) for i = 1..k, sines s(i t) for i = 1..k.

    Raises:
        InvalidInputError: shapes do not conform
        NumericalError: imaginary residue above the realness tolerance
    """
    if psi.cols != q.rows or q.rows != q.cols:
        raise InvalidInputError(f"realify: {psi.label} {psi.shape} does not conform with {q.label} {q.shape}")
    modulus = q.rows
    product = psi.matmul(q.conj_transpose(), label=phi_label(modulus))
    residue = product.max_imag()
    logger.debug(f"{product.label}: imaginary residue {residue:.3e}")
    phi = product.real_part()
    exact = None
    if psi.exact_form is not None and q.label == q_label(modulus):
        exact = CyclotomicFrame.realified(modulus, psi.exact_form.rows)
    return DenseMatrix(phi.data, phi.precision, True, phi_label(modulus), exact)


def closed_form_phi(omega: FrequencySet) -> np.ndarray:
    """sqrt(2/N) [sqrt(1/2) | c(i t) | s(i t)] evaluated directly in double precision."""
    n_mod = omega.modulus
    k = omega.half_modulus
    t = np.array(omega.indices, dtype=np.int64)[:, None]
    i = np.arange(1, k + 1, dtype=np.int64)[None, :]
    angle = 2 * np.pi * ((t * i) % n_mod) / n_mod
    const = np.full((omega.size, 1), math.sqrt(0.5))
    return math.sqrt(2.0 / n_mod) * np.hstack([const, np.cos(angle), np.sin(angle)])


def layout_residual(phi: DenseMatrix, omega: FrequencySet) -> float:
    """Entrywise max deviation of phi from the closed-form cosine/sine layout."""
    return float(np.max(np.abs(phi.to_numpy() - closed_form_phi(omega))))


def symmetry_residual(phi: DenseMatrix, omega: FrequencySet) -> float:
    """
    Max deviation from c(i(N-l)) = c(il) and s(i(N-l)) = -s(il) across mirrored rows.

    Rows l and N - l must both be present; other rows are ignored.
    """
    if not phi.is_real:
        raise InvalidInputError(f"{phi.label}: symmetry check needs a real frame")
    data = phi.to_numpy()
    k = omega.half_modulus
    worst = 0.0
    for l in omega.indices:
        mirror = (omega.modulus - l) % omega.modulus
        if l == 0 or mirror not in omega:
            continue
        a, b = data[omega.row_of(l)], data[omega.row_of(mirror)]
        worst = max(worst,
                    float(np.max(np.abs(a[:k + 1] - b[:k + 1]))),
                    float(np.max(np.abs(a[k + 1:] + b[k + 1:]))))
    return worst


def build_frames(modulus: int, omega: FrequencySet, precision=None):
    """Convenience: (psi, q, phi) for one modulus."""
    psi = partial_fourier(modulus, omega, precision)
    q = realifier_q(modulus, precision)
    return psi, q, realify(psi, q)
