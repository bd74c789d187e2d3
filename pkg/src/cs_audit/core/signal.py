"""Sparse vectors: support plus values."""
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from ..errors import InvalidInputError


@dataclass(frozen=True)
class SparseSignal:
    """
    Length-N complex vector stored as its support and the values on it.

    Args:
        length: Ambient dimension N
        support: Strictly increasing indices of the nonzero entries
        values: Nonzero values aligned with support
    """

    length: int
    support: Tuple[int, ...]
    values: Tuple[complex, ...]

    def __post_init__(self):
        support = tuple(int(i) for i in self.support)
        values = tuple(complex(v) for v in self.values)
        object.__setattr__(self, 'support', support)
        object.__setattr__(self, 'values', values)
        if len(support) != len(values):
            raise InvalidInputError(f"Support has {len(support)} indices but {len(values)} values")
        if any(b <= a for a, b in zip(support, support[1:])):
            raise InvalidInputError(f"Support must be strictly increasing: {support}")
        if support and (support[0] < 0 or support[-1] >= self.length):
            raise InvalidInputError(f"Support must lie in [0, {self.length - 1}]")
        if any(v == 0 for v in values):
            raise InvalidInputError("Values on the support must be nonzero")

    @classmethod
    def zeros(cls, length: int) -> "SparseSignal":
        return cls(length, (), ())

    @classmethod
    def from_dense(cls, x: Sequence[complex], tol: float = 0.0) -> "SparseSignal":
        """Keep entries with magnitude above tol."""
        arr = np.asarray(x, dtype=np.complex128)
        support = np.flatnonzero(np.abs(arr) > tol)
        return cls(arr.size, tuple(support.tolist()), tuple(arr[support].tolist()))

    @classmethod
    def from_pairs(cls, length: int, pairs: Sequence[Tuple[int, complex]]) -> "SparseSignal":
        """Build from (index, value) pairs in any order."""
        ordered = sorted((int(i), complex(v)) for i, v in pairs)
        return cls(length, tuple(i for i, _ in ordered), tuple(v for _, v in ordered))

    @property
    def norm0(self) -> int:
        return len(self.support)

    @property
    def norm1(self) -> float:
        return float(sum(abs(v) for v in self.values))

    def to_dense(self) -> np.ndarray:
        x = np.zeros(self.length, dtype=np.complex128)
        if self.support:
            x[list(self.support)] = self.values
        return x

    def to_dict(self) -> Dict[str, Any]:
        return {
            'length': self.length,
            'support': list(self.support),
            'values': [[v.real, v.imag] for v in self.values],
        }
