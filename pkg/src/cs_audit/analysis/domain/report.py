"""Verification report: claim verdicts, seeds and evidence hashes."""
import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from .claims import ClaimEntry


def to_jsonable(obj: Any) -> Any:
    """Plain JSON types; infinities become '+inf'/'-inf', NaN becomes 'nan'."""
    if hasattr(obj, 'to_dict'):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return '+inf' if value > 0 else '-inf'
        return value
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    if hasattr(obj, 'value') and isinstance(getattr(obj, 'value'), str):
        return obj.value
    return obj


def canonical_json(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2)


@dataclass
class VerificationReport:
    """
    Everything a run concluded.

    The body (version, spec echo, claims, seeds, evidence hashes) is deterministic
    for fixed seeds; timestamps, run directory and golden comparison live outside it.
    """

    tool_version: str
    spec: Dict[str, Any]
    claims: List[ClaimEntry] = field(default_factory=list)
    seed_registry: Dict[str, int] = field(default_factory=dict)
    evidence_files: Dict[str, str] = field(default_factory=dict)
    started: Optional[str] = None
    finished: Optional[str] = None
    run_dir: Optional[str] = None
    golden: Dict[str, str] = field(default_factory=dict)
    aborted: Optional[str] = None

    def claim(self, claim_id: str) -> ClaimEntry:
        for entry in self.claims:
            if entry.claim_id == claim_id:
                return entry
        raise KeyError(claim_id)

    def verdicts(self) -> Dict[str, str]:
        return {c.claim_id: c.verdict.value for c in self.claims}

    def unresolved_evidence(self) -> List[str]:
        """Evidence pointers that name no file produced by this run."""
        return sorted({p for c in self.claims for p in c.evidence if p not in self.evidence_files})

    def body(self) -> Dict[str, Any]:
        return to_jsonable({
            'tool_version': self.tool_version,
            'spec': self.spec,
            'claims': [c.to_dict() for c in self.claims],
            'seed_registry': self.seed_registry,
            'seed_rule': 'numpy SeedSequence(master_seed).spawn over scenarios in registry order',
            'evidence_files': dict(sorted(self.evidence_files.items())),
            'aborted': self.aborted,
        })

    def body_sha256(self) -> str:
        return hashlib.sha256(canonical_json(self.body()).encode('utf-8')).hexdigest()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'body': self.body(),
            'body_sha256': self.body_sha256(),
            'run': {
                'started': self.started,
                'finished': self.finished,
                'run_dir': self.run_dir,
                'golden': dict(sorted(self.golden.items())),
            },
        }
