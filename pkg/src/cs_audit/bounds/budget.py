"""The measurement bound m >= C mu^2 S ln n, solved for S or for m."""
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from ..config import config
from ..errors import InvalidInputError

# Values within this relative distance of an integer are treated as that integer
# before flooring/ceiling, so algebraically exact cases are not pushed off by rounding.
INTEGER_SNAP = 1e-12


def _snap(value: float) -> float:
    nearest = round(value)
    if abs(value - nearest) <= INTEGER_SNAP * max(1.0, abs(value)):
        return float(nearest)
    return value


def default_c() -> float:
    return float(config.get('bounds.c_const', 46.0))


@dataclass(frozen=True)
class BoundQuery:
    """
    Inputs to the sparsity budget. The logarithm is natural.

    Args:
        n: Signal length (>= 2)
        m: Measurement count (<= n)
        mu: Coherence in [1, sqrt(n)]
        c_const: Positive constant C
    """

    n: float
    m: float
    mu: float = 1.0
    c_const: Optional[float] = None

    def __post_init__(self):
        if self.c_const is None:
            object.__setattr__(self, 'c_const', default_c())
        if self.n < 2:
            raise InvalidInputError(f"n must be >= 2, got {self.n}")
        if not 0 < self.m <= self.n:
            raise InvalidInputError(f"m must lie in (0, n], got m={self.m}, n={self.n}")
        if not 1.0 <= self.mu <= math.sqrt(self.n) + 1e-12:
            raise InvalidInputError(f"mu must lie in [1, sqrt(n)], got {self.mu}")
        if self.c_const <= 0:
            raise InvalidInputError(f"C must be positive, got {self.c_const}")

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out['log_base'] = 'e'
        return out


@dataclass(frozen=True)
class SparsityBudget:
    """Largest admissible sparsity S for a query, real-valued and floored."""

    query: BoundQuery
    s: float
    s_floor: int

    @property
    def fraction(self) -> float:
        """S as a share of the signal length."""
        return self.s / self.query.n

    def to_dict(self) -> Dict[str, Any]:
        return {**self.query.to_dict(), 's': self.s, 's_floor': self.s_floor,
                's_ceil': math.ceil(_snap(self.s)), 'fraction': self.fraction}


@dataclass(frozen=True)
class MeasurementRequirement:
    """Measurements demanded by the bound; infeasible when more than n."""

    s: int
    n: float
    mu: float
    c_const: float
    m: int
    infeasible: bool

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out['reason'] = 'exceeds signal length' if self.infeasible else None
        return out


def max_sparsity(q: BoundQuery) -> SparsityBudget:
    """S = m / (C mu^2 ln n)."""
    s = q.m / (q.c_const * q.mu ** 2 * math.log(q.n))
    return SparsityBudget(q, s, int(math.floor(_snap(s))))


def required_measurements(s: int, n: float, mu: float,
                          c_const: Optional[float] = None) -> MeasurementRequirement:
    """
    m = ceil(C mu^2 s ln n), flagged infeasible when it exceeds n.

    Raises:
        InvalidInputError: s < 1, n < 2 or mu outside [1, sqrt(n)]
    """
    c_const = default_c() if c_const is None else c_const
    if s < 1:
        raise InvalidInputError(f"s must be >= 1, got {s}")
    if n < 2:
        raise InvalidInputError(f"n must be >= 2, got {n}")
    if not 1.0 <= mu <= math.sqrt(n) + 1e-12:
        raise InvalidInputError(f"mu must lie in [1, sqrt(n)], got {mu}")
    if c_const <= 0:
        raise InvalidInputError(f"C must be positive, got {c_const}")
    m = int(math.ceil(_snap(c_const * mu ** 2 * s * math.log(n))))
    return MeasurementRequirement(s, n, mu, c_const, m, m > n)
