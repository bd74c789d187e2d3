"""Arithmetic precision modes and the tolerances tied to them."""
import contextlib
from enum import Enum
from typing import ContextManager

import mpmath

from ..config import config
from ..errors import InvalidInputError


class Precision(str, Enum):
    """Significand width used for floating-point work."""

    DOUBLE = "double"
    EXTENDED = "extended"

    @classmethod
    def parse(cls, value) -> "Precision":
        """Accept a Precision, its name, or None (config default)."""
        if value is None:
            value = config.get('precision.default', 'double')
        if isinstance(value, Precision):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidInputError(f"Unknown precision {value!r} (expected double or extended)")


def extended_bits() -> int:
    return int(config.get('precision.extended_bits', 256))


def precision_context(precision: Precision) -> ContextManager:
    """mpmath working-precision context for the extended path; no-op for double."""
    if Precision.parse(precision) is Precision.EXTENDED:
        return mpmath.workprec(extended_bits())
    return contextlib.nullcontext()


def realness_tolerance(precision: Precision) -> float:
    """Largest imaginary residue allowed on a matrix tagged real."""
    return float(config.get(f'precision.realness_tolerance.{Precision.parse(precision).value}'))


def rank_tolerance(precision: Precision) -> float:
    """Relative singular-value cutoff used by numeric rank decisions."""
    return float(config.get(f'robustness.tau_rank.{Precision.parse(precision).value}'))
