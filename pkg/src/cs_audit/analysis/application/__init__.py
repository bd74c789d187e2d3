"""Application layer - scenario runners and the verification workflow."""

from cs_audit.analysis.application.scenarios import SCENARIO_RUNNERS, RunContext, iter_sparse_instances
from cs_audit.analysis.application.verification_service import VerificationService, derive_seeds

__all__ = ['SCENARIO_RUNNERS', 'RunContext', 'iter_sparse_instances', 'VerificationService', 'derive_seeds']
