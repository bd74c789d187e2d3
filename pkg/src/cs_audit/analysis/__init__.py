"""Claim-by-claim verification pipeline."""

from cs_audit.analysis.interfaces.verification_facade import VerificationFacade

__all__ = ['VerificationFacade']
