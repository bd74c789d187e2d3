"""Verification workflow orchestrator."""

import logging
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from typing import Any, Dict, List, Tuple

import numpy as np

from cs_audit import __version__
from cs_audit.analysis.application.scenarios import CONSTRUCTION_CHECKS, SCENARIO_RUNNERS, RunContext
from cs_audit.analysis.domain.claims import CLAIM_REGISTRY, ClaimEntry, out_of_scope_entries
from cs_audit.analysis.domain.experiment import ExperimentSpec, Scenario, default_parameters
from cs_audit.analysis.domain.report import VerificationReport
from cs_audit.analysis.infrastructure.storage import RunStorage
from cs_audit.config import config
from cs_audit.errors import OutputError

logger = logging.getLogger(__name__)

SUITE_ORDER: List[str] = [CONSTRUCTION_CHECKS] + [s.value for s in Scenario]
REPORT_FILE = "report.json"


def derive_seeds(master_seed: int) -> Dict[str, int]:
    """One 64-bit seed per suite entry, spawned from the master seed in suite order."""
    children = np.random.SeedSequence(int(master_seed)).spawn(len(SUITE_ORDER))
    return {name: int(child.generate_state(1, dtype=np.uint64)[0])
            for name, child in zip(SUITE_ORDER, children)}


def construction_parameters() -> Dict[str, Any]:
    primes = config.get('harness.primes', {}) or {}
    return {
        'omega_sweep_max': int(primes.get('omega_sweep_max', 199)),
        'identity_sweep_max': int(primes.get('identity_sweep_max', 101)),
        'exact': list(primes.get('exact', [5, 7, 11, 13])),
    }


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _ordered(claims: List[ClaimEntry]) -> List[ClaimEntry]:
    rank = {c.claim_id: i for i, c in enumerate(CLAIM_REGISTRY)}
    return sorted(claims, key=lambda c: rank.get(c.claim_id, len(rank)))


class VerificationService:
    """Runs scenarios against one RunStorage and assembles the report."""

    def __init__(self, storage: RunStorage, context: RunContext, master_seed: int):
        """
        Initialize verification service.

        Args:
            storage: RunStorage the evidence is written to
            context: Precision, workers and budget override for every scenario
            master_seed: Seed the per-scenario seeds are derived from
        """
        self.storage = storage
        self.context = context
        self.master_seed = int(master_seed)
        self.seeds = derive_seeds(self.master_seed)

    def run_experiment(self, spec: ExperimentSpec) -> VerificationReport:
        """
        Execute a single scenario and write its report.

        A contradicted claim is a result, not an error; hard errors propagate
        after the partial report has been written.
        """
        spec.validate(self.context.force_budget)
        params = spec.resolved_parameters()
        name = spec.scenario.value
        seed = int(params['seed']) if params.get('seed') is not None else self.seeds[name]

        self.storage.create_run_directory(name)
        self.storage.copy_config(config.path)
        report = VerificationReport(
            tool_version=__version__,
            spec={'scenario': name, 'parameters': params, 'master_seed': self.master_seed,
                  'precision': self.context.precision.value},
            seed_registry={name: seed},
            started=_now(),
        )
        self._execute(report, [(name, params, seed)], parallel=False)
        self._finish(report)
        return report

    def verify_all(self, parallel: bool = False) -> VerificationReport:
        """
        Run the construction checks and every scenario with default parameters.

        Args:
            parallel: Run independent scenarios concurrently (outputs are per-scenario directories)
        """
        suite: List[Tuple[str, Dict[str, Any], int]] = [
            (CONSTRUCTION_CHECKS, construction_parameters(), self.seeds[CONSTRUCTION_CHECKS])]
        for scenario in Scenario:
            params = default_parameters(scenario)
            if scenario is Scenario.ROBUSTNESS_SWEEP:
                params['precision'] = self.context.precision.value
            suite.append((scenario.value, params, self.seeds[scenario.value]))

        self.storage.create_run_directory("verify")
        self.storage.copy_config(config.path)
        report = VerificationReport(
            tool_version=__version__,
            spec={'scenario': 'verify_all', 'master_seed': self.master_seed,
                  'precision': self.context.precision.value,
                  'parameters': {name: params for name, params, _ in suite}},
            seed_registry=dict(self.seeds),
            started=_now(),
        )
        self._execute(report, suite, parallel)
        report.claims = _ordered(report.claims + out_of_scope_entries())
        self._finish(report)
        return report

    def _execute(self, report: VerificationReport, suite, parallel: bool) -> None:
        collected: Dict[str, List[ClaimEntry]] = {}
        try:
            if parallel and len(suite) > 1:
                with ThreadPoolExecutor(max_workers=len(suite)) as pool:
                    futures = {name: pool.submit(self._run_one, name, params, seed)
                               for name, params, seed in suite}
                    for name, _, _ in suite:
                        collected[name] = futures[name].result()
            else:
                for name, params, seed in suite:
                    collected[name] = self._run_one(name, params, seed)
        except Exception as e:
            report.aborted = f"{type(e).__name__}: {e}"
            report.claims = _ordered([c for name, _, _ in suite for c in collected.get(name, [])])
            logger.error(f"Run aborted: {report.aborted}; writing partial report")
            self._finish(report)
            raise
        report.claims = _ordered([c for name, _, _ in suite for c in collected[name]])

    def _run_one(self, name: str, params: Dict[str, Any], seed: int) -> List[ClaimEntry]:
        logger.info(f"Scenario {name} (seed {seed})")
        claims = SCENARIO_RUNNERS[name](params, seed, self.storage, self.context)
        logger.info(f"Scenario {name}: " + ", ".join(f"{c.claim_id}={c.verdict.value}" for c in claims))
        return claims

    def _finish(self, report: VerificationReport) -> None:
        """Attach evidence hashes and write report.json."""
        report.evidence_files = dict(self.storage.evidence)
        report.golden = dict(self.storage.golden)
        report.run_dir = str(self.storage.get_run_directory())
        report.finished = _now()
        missing = report.unresolved_evidence()
        if missing:
            raise OutputError(f"Evidence pointers without files: {missing}")
        self.storage.save_json(REPORT_FILE, report.to_dict(), record=False)
        logger.info(f"Report written to {self.storage.path_for(REPORT_FILE)} "
                    f"(body sha256 {report.body_sha256()[:12]})")
