"""Frequency set builders: the symmetric set and uniform random draws."""
import logging
from typing import Callable, Dict, Optional, Set

import numpy as np
from sympy import isprime

from ..config import config
from ..core.frequency_set import FrequencySet
from ..errors import InvalidInputError

logger = logging.getLogger(__name__)


def _odd_half(modulus: int) -> Set[int]:
    """{0} plus odd i <= k plus their mirrors N - i."""
    k = (modulus - 1) // 2
    odd = set(range(1, k + 1, 2))
    return {0} | odd | {modulus - i for i in odd}


def _all_odd(modulus: int) -> Set[int]:
    """{0} plus every odd residue plus mirrors."""
    odd = set(range(1, modulus, 2))
    return {0} | odd | {modulus - i for i in odd}


def _full(modulus: int) -> Set[int]:
    return set(range(modulus))


MEMBERSHIP_POLICIES: Dict[str, Callable[[int], Set[int]]] = {
    'odd_half': _odd_half,
    'all_odd': _all_odd,
    'full': _full,
}


def register_policy(name: str, rule: Callable[[int], Set[int]]) -> None:
    """Add a membership rule; it must return a symmetric set containing 0."""
    MEMBERSHIP_POLICIES[name] = rule


def expected_symmetric_size(modulus: int) -> int:
    """k + 1 when k is even, k + 2 otherwise (default policy)."""
    k = (modulus - 1) // 2
    return k + 1 if k % 2 == 0 else k + 2


def _check_prime_modulus(modulus: int) -> None:
    if modulus < 3 or modulus % 2 == 0:
        raise InvalidInputError(f"N must be an odd prime >= 3, got {modulus}")
    if not isprime(modulus):
        raise InvalidInputError(f"N must be prime, got {modulus} (composite)")


def make_symmetric_omega(modulus: int, policy: Optional[str] = None) -> FrequencySet:
    """
    Build the symmetric frequency set for a prime modulus.

    Args:
        modulus: Prime N >= 3
        policy: Membership rule name (defaults to constructions.omega_policy)

    Returns:
        Symmetric FrequencySet

    Raises:
        InvalidInputError: N even, composite or too small; unknown policy
    """
    _check_prime_modulus(modulus)
    policy = policy or config.get('constructions.omega_policy', 'odd_half')
    if policy not in MEMBERSHIP_POLICIES:
        raise InvalidInputError(f"Unknown omega policy {policy!r}; known: {sorted(MEMBERSHIP_POLICIES)}")
    omega = FrequencySet.from_indices(modulus, MEMBERSHIP_POLICIES[policy](modulus))
    if not omega.is_symmetric():
        raise InvalidInputError(f"Policy {policy!r} produced a non-symmetric set for N={modulus}")
    logger.debug(f"Symmetric omega N={modulus} policy={policy}: size {omega.size}")
    return omega


def make_random_omega(modulus: int, m: int, seed: int) -> FrequencySet:
    """
    Draw m distinct frequencies uniformly without replacement.

    Raises:
        InvalidInputError: m outside [1, N]
    """
    if modulus < 1:
        raise InvalidInputError(f"N must be positive, got {modulus}")
    if not 1 <= m <= modulus:
        raise InvalidInputError(f"Need 1 <= m <= N, got m={m}, N={modulus}")
    rng = np.random.default_rng(seed)
    picks = rng.choice(modulus, size=m, replace=False)
    return FrequencySet.from_indices(modulus, picks.tolist())
