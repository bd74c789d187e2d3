"""Interfaces layer - facade used by the CLI."""

from cs_audit.analysis.interfaces.verification_facade import VerificationFacade

__all__ = ['VerificationFacade']
