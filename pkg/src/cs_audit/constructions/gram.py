"""Gram blocks of the real frame and the rank chain built from them."""
import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict

import mpmath
import numpy as np

from ..core.matrix import DenseMatrix
from ..core.precision import precision_context
from ..errors import InvalidInputError
from ..robustness.rank import numeric_rank

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GramBlocks:
    """M = Phi^T Phi, M1 = C2^T C2, M2 = S2^T S2 and the largest |C2^T S2| entry."""

    m: DenseMatrix
    m1: DenseMatrix
    m2: DenseMatrix
    offdiag_max: float


@dataclass(frozen=True)
class RankChain:
    """Numeric ranks of every object in the block-rank argument."""

    modulus: int
    n: int
    rank_c2: int
    rank_s2: int
    rank_m1: int
    rank_m2: int
    rank_m: int
    rank_phi: int

    @property
    def block_sum(self) -> int:
        return self.rank_m1 + self.rank_m2

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out['block_sum'] = self.block_sum
        return out


def _split(phi: DenseMatrix, k: int):
    if not phi.is_real:
        raise InvalidInputError(f"{phi.label}: gram blocks need a real frame")
    if phi.cols != 2 * k + 1:
        raise InvalidInputError(f"{phi.label}: expected {2 * k + 1} columns for k={k}, got {phi.cols}")
    c2 = phi.columns(range(0, k + 1)).with_label(f"C2[{phi.label}]")
    s2 = phi.columns(range(k + 1, 2 * k + 1)).with_label(f"S2[{phi.label}]")
    return c2, s2


def _gram(a: DenseMatrix, b: DenseMatrix, label: str) -> DenseMatrix:
    with precision_context(a.precision):
        data = a.data.T @ b.data
    return DenseMatrix(data, a.precision, True, label)


def gram_blocks(phi: DenseMatrix, k: int) -> GramBlocks:
    """
    Gram matrix of the real frame and its cosine/sine blocks.

    Columns 0..k are the constant and cosine columns (C2), k+1..2k the sines (S2).
    """
    c2, s2 = _split(phi, k)
    cross = _gram(c2, s2, "C2^T S2")
    if phi.is_extended:
        offdiag = float(max(mpmath.fabs(x) for x in cross.data.ravel()))
    else:
        offdiag = float(np.max(np.abs(cross.data)))
    blocks = GramBlocks(
        m=_gram(phi, phi, f"M[{phi.label}]"),
        m1=_gram(c2, c2, f"M1[{phi.label}]"),
        m2=_gram(s2, s2, f"M2[{phi.label}]"),
        offdiag_max=offdiag,
    )
    logger.debug(f"{phi.label}: offdiag_max={offdiag:.3e}")
    return blocks


def rank_chain(phi: DenseMatrix, k: int) -> RankChain:
    """Ranks of C2, S2, M1, M2, M and Phi for one frame."""
    c2, s2 = _split(phi, k)
    blocks = gram_blocks(phi, k)
    return RankChain(
        modulus=2 * k + 1,
        n=phi.rows,
        rank_c2=numeric_rank(c2),
        rank_s2=numeric_rank(s2),
        rank_m1=numeric_rank(blocks.m1),
        rank_m2=numeric_rank(blocks.m2),
        rank_m=numeric_rank(blocks.m),
        rank_phi=numeric_rank(phi),
    )
