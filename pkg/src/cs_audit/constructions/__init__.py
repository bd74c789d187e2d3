"""Frequency sets, partial Fourier frames and their real counterparts."""
from .omega import (
    MEMBERSHIP_POLICIES,
    expected_symmetric_size,
    make_random_omega,
    make_symmetric_omega,
    register_policy,
)
from .fourier import (
    build_frames,
    closed_form_phi,
    layout_residual,
    partial_fourier,
    realifier_q,
    realify,
    symmetry_residual,
)
from .gram import GramBlocks, RankChain, gram_blocks, rank_chain

__all__ = [
    'MEMBERSHIP_POLICIES', 'expected_symmetric_size', 'make_random_omega',
    'make_symmetric_omega', 'register_policy',
    'build_frames', 'closed_form_phi', 'layout_residual', 'partial_fourier',
    'realifier_q', 'realify', 'symmetry_residual',
    'GramBlocks', 'RankChain', 'gram_blocks', 'rank_chain',
]
