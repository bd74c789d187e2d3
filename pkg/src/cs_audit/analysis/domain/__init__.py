"""Domain layer - claims, experiment specs and reports."""

from cs_audit.analysis.domain.claims import (
    CLAIM_REGISTRY,
    CLAIMS_BY_ID,
    ClaimEntry,
    ClaimSpec,
    Verdict,
    out_of_scope_entries,
)
from cs_audit.analysis.domain.experiment import ExperimentSpec, Scenario, default_parameters
from cs_audit.analysis.domain.report import VerificationReport, canonical_json, to_jsonable

__all__ = [
    'CLAIM_REGISTRY',
    'CLAIMS_BY_ID',
    'ClaimEntry',
    'ClaimSpec',
    'Verdict',
    'out_of_scope_entries',
    'ExperimentSpec',
    'Scenario',
    'default_parameters',
    'VerificationReport',
    'canonical_json',
    'to_jsonable',
]
