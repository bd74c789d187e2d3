"""The sampled frequency index set."""
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

from ..errors import InvalidInputError


@dataclass(frozen=True)
class FrequencySet:
    """
    Sorted distinct frequency indices drawn from {0, ..., modulus-1}.

    Args:
        modulus: Signal length N
        indices: Sampled frequencies, strictly increasing
    """

    modulus: int
    indices: Tuple[int, ...]

    def __post_init__(self):
        indices = tuple(int(i) for i in self.indices)
        object.__setattr__(self, 'indices', indices)
        if self.modulus < 1:
            raise InvalidInputError(f"Modulus must be positive, got {self.modulus}")
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise InvalidInputError(f"Frequency indices must be strictly increasing: {indices}")
        if indices and (indices[0] < 0 or indices[-1] >= self.modulus):
            raise InvalidInputError(f"Frequency indices must lie in [0, {self.modulus - 1}]")

    @classmethod
    def from_indices(cls, modulus: int, indices: Sequence[int]) -> "FrequencySet":
        """Build from an unordered collection; duplicates are rejected."""
        values = [int(i) for i in indices]
        if len(set(values)) != len(values):
            raise InvalidInputError(f"Duplicate frequency indices: {values}")
        return cls(modulus, tuple(sorted(values)))

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def half_modulus(self) -> int:
        """k such that N = 2k + 1."""
        return (self.modulus - 1) // 2

    def is_symmetric(self) -> bool:
        """0 is present and every index comes with its mirror (N - i) mod N."""
        present = set(self.indices)
        return 0 in present and all((self.modulus - i) % self.modulus in present for i in present)

    def row_of(self, frequency: int) -> int:
        """Row position of a frequency (rows follow ascending index order)."""
        try:
            return self.indices.index(frequency)
        except ValueError:
            raise InvalidInputError(f"Frequency {frequency} not in set")

    def __contains__(self, frequency: int) -> bool:
        return frequency in self.indices

    def __len__(self) -> int:
        return len(self.indices)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'modulus': self.modulus,
            'indices': list(self.indices),
            'size': self.size,
            'symmetric': self.is_symmetric(),
        }
