"""Partial spectrum measurements of sparse signals."""
import numpy as np

from ..constructions.fourier import partial_fourier
from ..core.frequency_set import FrequencySet
from ..core.signal import SparseSignal
from ..errors import InvalidInputError


def dft_measure(f: SparseSignal, omega: FrequencySet) -> np.ndarray:
    """
    Spectrum of f restricted to omega: partial_fourier(N, omega) @ f.

    Raises:
        InvalidInputError: signal length differs from the set's modulus
    """
    if f.length != omega.modulus:
        raise InvalidInputError(f"Signal length {f.length} != frequency modulus {omega.modulus}")
    psi = partial_fourier(omega.modulus, omega)
    return psi.data @ f.to_dense()


def measure(a, f: SparseSignal) -> np.ndarray:
    """y = a @ f for an arbitrary measurement matrix."""
    if f.length != a.cols:
        raise InvalidInputError(f"Signal length {f.length} != {a.label} columns {a.cols}")
    return a.to_numpy() @ f.to_dense()
