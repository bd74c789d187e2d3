"""Orthonormal DCT, largest-coefficient sparsification and PSNR."""
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import pandas as pd
import scipy.fft

from ..errors import InvalidInputError, OutputError

logger = logging.getLogger(__name__)


def dct_forward(x) -> np.ndarray:
    """Orthonormal type-II DCT."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise InvalidInputError("DCT needs a nonempty 1-D vector")
    return scipy.fft.dct(x, type=2, norm='ortho')


def dct_inverse(c) -> np.ndarray:
    """Inverse of dct_forward."""
    c = np.asarray(c, dtype=np.float64)
    if c.ndim != 1 or c.size == 0:
        raise InvalidInputError("Inverse DCT needs a nonempty 1-D vector")
    return scipy.fft.idct(c, type=2, norm='ortho')


def psnr(original, reconstruction) -> float:
    """
    10 log10(peak^2 / MSE) in dB with peak = max|original|.

    Returns +inf when the reconstruction is exact or the original is zero.
    """
    x = np.asarray(original, dtype=np.float64)
    y = np.asarray(reconstruction, dtype=np.float64)
    mse = float(np.mean((x - y) ** 2))
    peak = float(np.max(np.abs(x)))
    if mse == 0.0 or peak == 0.0:
        return math.inf
    return 10.0 * math.log10(peak ** 2 / mse)


@dataclass
class SparsificationResult:
    """Reconstruction from the largest DCT coefficients."""

    length: int
    keep_fraction: float
    kept: int
    reconstruction: np.ndarray
    mse: float
    psnr_db: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            'length': self.length,
            'keep_fraction': self.keep_fraction,
            'kept': self.kept,
            'mse': self.mse,
            'psnr_db': '+inf' if math.isinf(self.psnr_db) else self.psnr_db,
        }


def sparsify(x, keep_fraction: float) -> SparsificationResult:
    """
    Keep ceil(keep_fraction * length) largest-magnitude DCT coefficients, zero the rest.

    Ties in magnitude are broken towards the lower index.
    """
    if not 0.0 <= keep_fraction <= 1.0:
        raise InvalidInputError(f"keep_fraction must lie in [0, 1], got {keep_fraction}")
    x = np.asarray(x, dtype=np.float64)
    coeffs = dct_forward(x)
    kept = min(x.size, int(math.ceil(keep_fraction * x.size - 1e-9)))
    order = np.argsort(-np.abs(coeffs), kind='stable')
    trimmed = np.zeros_like(coeffs)
    trimmed[order[:kept]] = coeffs[order[:kept]]
    recon = dct_inverse(trimmed) if kept < x.size else x.copy()
    mse = float(np.mean((x - recon) ** 2))
    result = SparsificationResult(x.size, keep_fraction, kept, recon, mse, psnr(x, recon))
    logger.debug(f"sparsify length={x.size} keep={kept}: PSNR {result.psnr_db}")
    return result


def synthetic_signal(length: int = 4096) -> np.ndarray:
    """
    Deterministic piecewise-smooth test signal on [0, 1).

    Polynomial and sinusoidal pieces separated by jumps, plus a chirp section.
    """
    if length < 8:
        raise InvalidInputError(f"Synthetic signal needs length >= 8, got {length}")
    t = np.arange(length, dtype=np.float64) / length
    x = np.zeros(length)
    a = t < 0.25
    x[a] = 0.8 + 0.6 * t[a] - 2.0 * t[a] ** 2
    b = (t >= 0.25) & (t < 0.5)
    x[b] = -0.3 + 0.5 * np.sin(6 * np.pi * t[b])
    c = (t >= 0.5) & (t < 0.75)
    x[c] = 0.4 * np.cos(2 * np.pi * (4 * t[c] + 20 * (t[c] - 0.5) ** 2))
    d = t >= 0.75
    x[d] = 1.2 - 1.5 * (t[d] - 0.75)
    return x


def write_comparison_csv(original, result: SparsificationResult, path: Union[str, Path]) -> Path:
    """Two-column CSV (original, reconstruction) for external plotting."""
    path = Path(path)
    df = pd.DataFrame({'original': np.asarray(original, dtype=np.float64),
                       'reconstruction': result.reconstruction})
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(path, index=False, float_format='%.17g')
    except OSError as e:
        logger.error(f"Failed to write {path}: {e}")
        raise OutputError(f"Cannot write to {path}: {e}")
    return path
