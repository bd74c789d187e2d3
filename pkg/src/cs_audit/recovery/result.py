"""Recovery outcome records."""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..core.signal import SparseSignal


@dataclass
class RecoveryResult:
    """
    Outcome of a P0 enumeration or a basis pursuit run.

    P0 fills `solutions` (all minimisers at the first feasible sparsity);
    basis pursuit fills `dense`.
    """

    method: str
    residual_l2: float
    sparsity_found: int
    converged: bool
    solutions: List[SparseSignal] = field(default_factory=list)
    dense: Optional[np.ndarray] = None
    supports_enumerated: int = 0
    iterations: int = 0
    overflow: bool = False
    feasible: bool = True
    near_misses: int = 0

    @property
    def unique(self) -> bool:
        return len(self.solutions) == 1 and not self.overflow

    def to_dict(self) -> Dict[str, Any]:
        out = {
            'method': self.method,
            'residual_l2': self.residual_l2,
            'sparsity_found': self.sparsity_found,
            'converged': self.converged,
            'feasible': self.feasible,
            'supports_enumerated': self.supports_enumerated,
            'iterations': self.iterations,
            'overflow': self.overflow,
            'near_misses': self.near_misses,
            'solutions': [s.to_dict() for s in self.solutions],
        }
        if self.dense is not None:
            out['dense'] = [[complex(v).real, complex(v).imag] for v in self.dense]
        return out
