"""Claim registry and per-claim verdict records."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class Verdict(str, Enum):
    """What the evidence says about a claim; the tool reports, it does not editorialize."""

    SUPPORTED = "supported"
    CONTRADICTED = "contradicted"
    OUT_OF_SCOPE = "out_of_scope"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class ClaimSpec:
    """A registered claim: identifier, anchor statement and the scenario that tests it."""

    claim_id: str
    anchor: str
    scenario: Optional[str]


CLAIM_REGISTRY: List[ClaimSpec] = [
    ClaimSpec('omega_size_parity',
              "the symmetric frequency set has k + 1 elements if k is even, k + 2 otherwise",
              'construction_checks'),
    ClaimSpec('construction_identities',
              "Q and Psi have orthonormal rows; Phi = Psi Q* is real, follows the cosine/sine layout "
              "and satisfies c(i(N-l)) = c(il), s(i(N-l)) = -s(il)",
              'construction_checks'),
    ClaimSpec('gram_block_diagonal',
              "cosine and sine columns of Phi are orthogonal, so Phi^T Phi is block diagonal",
              'construction_checks'),
    ClaimSpec('rank_equals_size',
              "rank(Phi) = rank(Psi) = n",
              'construction_checks'),
    ClaimSpec('phi_not_maximally_robust',
              "Phi can not be maximally robust for any N = 2k + 1",
              'robustness_sweep'),
    ClaimSpec('psi_not_maximally_robust',
              "Q is invertible and unitary, so Psi can not be maximally robust for any prime N",
              'robustness_sweep'),
    ClaimSpec('prime_dft_minors_nonzero',
              "every square submatrix of a prime-order DFT matrix is nonsingular",
              'robustness_sweep'),
    ClaimSpec('floating_exact_agreement',
              "floating-point and exact cyclotomic subset verdicts coincide subset-for-subset",
              'robustness_sweep'),
    ClaimSpec('half_support_uniqueness',
              "f supported on T with |T| <= |Omega|/2 is reconstructed uniquely from Omega and its spectrum",
              'p0_uniqueness_sweep'),
    ClaimSpec('symmetric_omega_non_uniqueness',
              "with the symmetric Omega, some f with |T| <= |Omega|/2 is not the unique sparsest solution",
              'p0_uniqueness_sweep'),
    ClaimSpec('phi_non_uniqueness',
              "measured through Phi, some f with |T| <= n/2 is not the unique sparsest solution",
              'p0_uniqueness_sweep'),
    ClaimSpec('p0_consistency',
              "uniqueness verdicts match exhaustive P0 and 2||f||_0 < spark implies uniqueness",
              'p0_uniqueness_sweep'),
    ClaimSpec('basis_pursuit_sanity',
              "l1 minimisation returns f whenever P0 says f is unique, and never exceeds ||f||_1",
              'bp_vs_p0'),
    ClaimSpec('sparsity_budget_example',
              "n = 1024, m = 512, mu = 1, C = 46 gives S = 512 / (46 ln 1024), about 1.6: "
              "at most 2 of the 1024 coefficients",
              'bound_table'),
    ClaimSpec('measurement_bound_infeasible',
              "realistic sparsity levels demand more measurements than the signal length",
              'bound_table'),
    ClaimSpec('sparsification_demo',
              "a signal with only 0.2% nonzero DCT coefficients; orthonormal DCT, "
              "PSNR monotone in the retained fraction",
              'sparsify_demo'),
    ClaimSpec('single_pixel_camera_comparison',
              "single-pixel camera reconstructions compared with a proprietary codec",
              None),
    ClaimSpec('image_reconstruction_comparison',
              "published image reconstructions compared with a proprietary codec",
              None),
    ClaimSpec('wavelet_sparsification',
              "a 24-bit image with 0.2% nonzero 2-D wavelet coefficients",
              None),
]

CLAIMS_BY_ID: Dict[str, ClaimSpec] = {c.claim_id: c for c in CLAIM_REGISTRY}


@dataclass
class ClaimEntry:
    """One claim's verdict with pointers to the files that back it."""

    claim_id: str
    anchor: str
    verdict: Verdict
    evidence: List[str] = field(default_factory=list)
    detail: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def create(cls, claim_id: str, verdict: Verdict, evidence: Optional[List[str]] = None,
               **detail) -> "ClaimEntry":
        """Entry whose anchor comes from the registry."""
        spec = CLAIMS_BY_ID[claim_id]
        return cls(claim_id, spec.anchor, Verdict(verdict), list(evidence or []), detail)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'claim_id': self.claim_id,
            'anchor': self.anchor,
            'verdict': self.verdict.value,
            'evidence': list(self.evidence),
            'detail': self.detail,
        }


def out_of_scope_entries() -> List[ClaimEntry]:
    """Entries for registered claims that no scenario can test."""
    return [ClaimEntry.create(c.claim_id, Verdict.OUT_OF_SCOPE,
                              reason="depends on proprietary images or 2-D transforms")
            for c in CLAIM_REGISTRY if c.scenario is None]

