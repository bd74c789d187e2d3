"""Immutable dense matrices at double or extended precision."""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .cyclotomic import CyclotomicFrame
from .precision import Precision, precision_context, realness_tolerance
from ..errors import InvalidInputError, NumericalError

# Elementwise helpers for object arrays holding mpmath numbers
_mp_conj = np.frompyfunc(mpmath.conj, 1, 1)
_mp_abs = np.frompyfunc(lambda z: mpmath.fabs(z), 1, 1)
_mp_imag = np.frompyfunc(lambda z: mpmath.im(z), 1, 1)
_mp_real = np.frompyfunc(lambda z: mpmath.re(z), 1, 1)
_mp_to_complex = np.frompyfunc(complex, 1, 1)


@dataclass(frozen=True)
class DenseMatrix:
    """
    Rectangular real or complex matrix, read-only after construction.

    Double precision stores a float64/complex128 ndarray; extended precision
    stores an object ndarray of mpmath numbers. ``exact_form`` is set by the
    constructors whose entries are representable in the cyclotomic oracle.
    """

    data: np.ndarray
    precision: Precision = Precision.DOUBLE
    is_real: bool = False
    label: str = ""
    exact_form: Optional[CyclotomicFrame] = field(default=None, compare=False)

    def __post_init__(self):
        precision = Precision.parse(self.precision)
        object.__setattr__(self, 'precision', precision)
        if precision is Precision.DOUBLE:
            dtype = np.float64 if self.is_real else np.complex128
            data = np.array(self.data, dtype=dtype, copy=True)
        else:
            data = np.array(self.data, dtype=object, copy=True)
        if data.ndim != 2 or data.size == 0:
            raise InvalidInputError(
                f"{self.label or 'matrix'}: expected a nonempty 2-D array, got shape {data.shape}")
        data.setflags(write=False)
        object.__setattr__(self, 'data', data)
        if self.exact_form is not None and self.exact_form.shape != data.shape:
            raise InvalidInputError(
                f"{self.label}: exact form shape {self.exact_form.shape} != data shape {data.shape}"
            )

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    @property
    def is_extended(self) -> bool:
        return self.precision is Precision.EXTENDED

    def with_label(self, label: str) -> "DenseMatrix":
        return DenseMatrix(self.data, self.precision, self.is_real, label, self.exact_form)

    def conj_transpose(self) -> "DenseMatrix":
        if self.is_extended:
            with precision_context(self.precision):
                data = self.data.T if self.is_real else _mp_conj(self.data.T)
        else:
            data = self.data.conj().T
        return DenseMatrix(data, self.precision, self.is_real, f"{self.label}*")

    def matmul(self, other: "DenseMatrix", label: str = "") -> "DenseMatrix":
        """Product self @ other at this matrix's precision."""
        if self.cols != other.rows:
            raise InvalidInputError(
                f"Cannot multiply {self.label} {self.shape} by {other.label} {other.shape}"
            )
        if self.precision is not other.precision:
            raise InvalidInputError("Operands must share a precision")
        with precision_context(self.precision):
            data = self.data @ other.data
        return DenseMatrix(data, self.precision, self.is_real and other.is_real,
                           label or f"{self.label}{other.label}")

    def columns(self, indices: Sequence[int]) -> "DenseMatrix":
        """Column submatrix, keeping the exact description in step."""
        idx = list(indices)
        exact = self.exact_form.select_columns(idx) if self.exact_form is not None else None
        return DenseMatrix(self.data[:, idx], self.precision, self.is_real, self.label, exact)

    def max_imag(self) -> float:
        """Largest |imaginary part| over all entries."""
        if self.is_real:
            return 0.0
        if self.is_extended:
            with precision_context(self.precision):
                return float(max(_mp_abs(_mp_imag(self.data)).ravel()))
        return float(np.max(np.abs(self.data.imag)))

    def real_part(self) -> "DenseMatrix":
        """Drop imaginary parts, checking the residue against the realness tolerance."""
        residue = self.max_imag()
        tol = realness_tolerance(self.precision)
        if residue > tol:
            raise NumericalError(f"{self.label}: imaginary residue {residue:.3e} exceeds {tol:.1e}")
        with precision_context(self.precision):
            data = _mp_real(self.data) if self.is_extended else self.data.real
        return DenseMatrix(data, self.precision, True, self.label, self.exact_form)

    def identity_residual(self) -> float:
        """max |self - I| for a square matrix."""
        if self.rows != self.cols:
            raise InvalidInputError(f"{self.label}: identity residual needs a square matrix")
        if self.is_extended:
            with precision_context(self.precision):
                eye = np.array(mpmath.eye(self.rows).tolist(), dtype=object)
                return float(max(_mp_abs(self.data - eye).ravel()))
        return float(np.max(np.abs(self.data - np.eye(self.rows))))

    def to_numpy(self) -> np.ndarray:
        """Double-precision ndarray view of the entries (rounded for extended)."""
        if not self.is_extended:
            return self.data
        if self.is_real:
            return np.array(self.data, dtype=np.float64)
        return np.array(_mp_to_complex(self.data), dtype=np.complex128)

    def to_mpmath(self) -> "mpmath.matrix":
        return mpmath.matrix(self.data.tolist())

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready description; entries as [real, imag] pairs (strings when extended)."""
        def pair(z):
            if self.is_extended:
                return [mpmath.nstr(mpmath.re(z), 30), mpmath.nstr(mpmath.im(z), 30)]
            z = complex(z)
            return [z.real, z.imag]

        return {
            'label': self.label,
            'rows': self.rows,
            'cols': self.cols,
            'precision': self.precision.value,
            'real': self.is_real,
            'entries': [[pair(z) for z in row] for row in self.data],
        }

    @classmethod
    def identity(cls, n: int, precision: Precision = Precision.DOUBLE, label: str = "") -> "DenseMatrix":
        precision = Precision.parse(precision)
        if precision is Precision.EXTENDED:
            with precision_context(precision):
                data = np.array(mpmath.eye(n).tolist(), dtype=object)
        else:
            data = np.eye(n)
        return cls(data, precision, True, label or f"I{n}")
