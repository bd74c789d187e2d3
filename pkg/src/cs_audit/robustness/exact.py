"""
Exact rank oracle over the cyclotomic field Q(w), w = exp(2 pi j / N).

Two stages:
  1. Finite-field certificate. Pick a prime p = 1 (mod N) and an element r of
     order N in GF(p); w -> r is a ring map Z[w] -> GF(p). A submatrix whose
     image has full column rank has full column rank over Q(w).
  2. Otherwise, fraction-free elimination on Z[w] elements with row content
     removal. Z[w] is an integral domain, so cross-multiplying rows by nonzero
     pivots preserves rank; the pivot count is the exact rank.
"""
import logging
from functools import lru_cache
from typing import List, Sequence, Tuple

from sympy import isprime

from ..config import config
from ..core import cyclotomic as cyc
from ..core.cyclotomic import CyclotomicFrame, Element
from ..errors import InvalidInputError

logger = logging.getLogger(__name__)

CERTIFICATE_PRIME_FLOOR = 2 ** 31


@lru_cache(maxsize=None)
def certificate_field(modulus: int) -> Tuple[int, int]:
    """(p, r): the first prime p = 1 mod N above 2^31 and an element of order N."""
    p = (CERTIFICATE_PRIME_FLOOR // modulus + 1) * modulus + 1
    while not isprime(p):
        p += modulus
    for g in range(2, p):
        r = pow(g, (p - 1) // modulus, p)
        if r != 1:
            return p, r
    raise ArithmeticError(f"No element of order {modulus} mod {p}")


def _rank_mod_prime(grid: List[List[Element]], modulus: int) -> int:
    p, r = certificate_field(modulus)
    rows = [[cyc.evaluate_mod(e, r, p) for e in row] for row in grid]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        for i in range(rank + 1, n_rows):
            f = rows[i][col]
            if f:
                factor = f * inv % p
                rows[i] = [(x - factor * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _primitive(row: List[Element]) -> List[Element]:
    g = cyc.content(row)
    if g > 1:
        return [tuple(c // g for c in e) for e in row]
    return row


def _rank_fraction_free(grid: List[List[Element]]) -> int:
    rows = [list(row) for row in grid]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if not cyc.is_zero(rows[i][col])), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p_row = rows[rank]
        p = p_row[col]
        for i in range(rank + 1, n_rows):
            e = rows[i][col]
            if cyc.is_zero(e):
                continue
            # row_i <- p * row_i - e * row_pivot
            rows[i] = _primitive([
                cyc.sub(cyc.mul(p, x), cyc.mul(e, y)) if c >= col else x
                for c, (x, y) in enumerate(zip(rows[i], p_row))
            ])
        rank += 1
    return rank


def _check_frame(frame: CyclotomicFrame) -> None:
    limit = int(config.get('robustness.exact_max_modulus', 13))
    if frame.modulus < 3 or not isprime(frame.modulus) or frame.modulus > limit:
        raise InvalidInputError(
            f"Exact oracle supports prime N in [3, {limit}], got N={frame.modulus}"
        )


def exact_rank_cyclotomic(frame: CyclotomicFrame) -> int:
    """
    Exact rank of a symbolic partial-DFT or realified-column matrix.

    Raises:
        InvalidInputError: N not prime or outside the supported range
    """
    _check_frame(frame)
    grid = frame.entries()
    if not grid or not grid[0]:
        return 0
    full = min(len(grid), len(grid[0]))
    if _rank_mod_prime(grid, frame.modulus) == full:
        return full
    rank = _rank_fraction_free(grid)
    logger.debug(f"Fraction-free elimination N={frame.modulus} shape={frame.shape}: rank {rank}")
    return rank


def exact_subset_dependent(frame: CyclotomicFrame, subset: Sequence[int]) -> bool:
    """True when the chosen columns are linearly dependent over Q(w)."""
    return exact_rank_cyclotomic(frame.select_columns(subset)) < len(subset)
