"""
Colexicographic enumeration of k-subsets of {0, ..., n-1}.

Colex order compares subsets by their largest differing element, so
{0,1,2} < {0,1,3} < {0,2,3} < {1,2,3} < {0,1,4} < ...  The rank of a
subset c_0 < ... < c_{k-1} is sum_i C(c_i, i + 1), which lets disjoint
rank ranges be handed to independent workers.
"""
from math import comb
from typing import Iterator, List, Sequence, Tuple

import numba
import numpy as np


@numba.njit(cache=True)
def colex_successor(comb_arr: np.ndarray, n: int) -> bool:
    """Advance comb_arr in place to the next subset; False when exhausted."""
    k = comb_arr.shape[0]
    for i in range(k):
        limit = comb_arr[i + 1] if i + 1 < k else n
        if comb_arr[i] + 1 < limit:
            comb_arr[i] += 1
            for j in range(i):
                comb_arr[j] = j
            return True
    return False


@numba.njit(cache=True)
def colex_batch(first: np.ndarray, count: int, n: int) -> np.ndarray:
    """Up to count consecutive subsets starting at first (inclusive)."""
    k = first.shape[0]
    out = np.empty((count, k), dtype=np.int64)
    current = first.copy()
    filled = 0
    while filled < count:
        for j in range(k):
            out[filled, j] = current[j]
        filled += 1
        if filled < count and not colex_successor(current, n):
            break
    return out[:filled]


def subset_count(n: int, k: int) -> int:
    return comb(n, k)


def colex_rank(subset: Sequence[int]) -> int:
    """Position of a sorted subset in colex order."""
    return sum(comb(c, i + 1) for i, c in enumerate(sorted(subset)))


def colex_unrank(rank: int, n: int, k: int) -> Tuple[int, ...]:
    """Subset at the given colex position."""
    if not 0 <= rank < comb(n, k):
        raise ValueError(f"Rank {rank} out of range for C({n},{k})")
    out: List[int] = []
    for i in range(k, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        rank -= comb(c, i)
        out.append(c)
    return tuple(reversed(out))


def iter_colex_batches(n: int, k: int, start: int, stop: int,
                       batch_size: int) -> Iterator[Tuple[int, np.ndarray]]:
    """
    Yield (rank of first row, batch array) covering colex ranks [start, stop).

    k = 0 yields the single empty subset.
    """
    if k == 0:
        if start == 0 and stop > 0:
            yield 0, np.zeros((1, 0), dtype=np.int64)
        return
    rank = start
    current = np.array(colex_unrank(start, n, k), dtype=np.int64) if start < stop else None
    while rank < stop:
        size = min(batch_size, stop - rank)
        batch = colex_batch(current, size, n)
        yield rank, batch
        rank += batch.shape[0]
        if rank < stop:
            current = batch[-1].copy()
            colex_successor(current, n)


def partition_ranges(total: int, parts: int) -> List[Tuple[int, int]]:
    """Split [0, total) into at most `parts` contiguous nonempty ranges."""
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    ranges, lo = [], 0
    for p in range(parts):
        hi = lo + step + (1 if p < extra else 0)
        ranges.append((lo, hi))
        lo = hi
    return ranges


def warmup_kernels() -> None:
    """Pre-compile the numba kernels before timed work."""
    first = np.array([0, 1], dtype=np.int64)
    colex_batch(first, 2, 3)
