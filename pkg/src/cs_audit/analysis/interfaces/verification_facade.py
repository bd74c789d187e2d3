"""Simple API facade for main.py integration."""

import logging
from pathlib import Path
from typing import Optional

from cs_audit.analysis.application.scenarios import RunContext
from cs_audit.analysis.application.verification_service import VerificationService
from cs_audit.analysis.domain.experiment import ExperimentSpec
from cs_audit.analysis.domain.report import VerificationReport
from cs_audit.analysis.infrastructure.storage import RunStorage
from cs_audit.config import config
from cs_audit.core.precision import Precision

logger = logging.getLogger(__name__)


class VerificationFacade:
    """
    Simple facade over the verification pipeline.

    Every call gets its own run directory under the output base directory.
    """

    def __init__(
        self,
        output_base_dir: Optional[str] = None,
        precision=None,
        master_seed: Optional[int] = None,
        workers: Optional[int] = None,
        force_budget: bool = False,
        golden_dir: Optional[str] = None,
    ):
        """
        Initialize verification facade.

        Args:
            output_base_dir: Base directory for run directories (harness.output_dir)
            precision: double or extended (precision.default)
            master_seed: Master seed (harness.master_seed)
            workers: Parallel workers for subset enumeration (robustness.workers)
            force_budget: Allow exhaustive enumeration beyond the subset budget
            golden_dir: Compare evidence files against this directory
        """
        self.output_base_dir = output_base_dir or config.get('harness.output_dir', 'runs')
        self.context = RunContext(
            precision=Precision.parse(precision),
            workers=int(workers or config.get('robustness.workers', 1)),
            force_budget=force_budget,
        )
        self.master_seed = int(master_seed if master_seed is not None
                               else config.get('harness.master_seed', 0))
        self.golden_dir = golden_dir
        self._last_run: Optional[Path] = None

    def _service(self, base_dir: Optional[str] = None) -> VerificationService:
        storage = RunStorage(base_dir or self.output_base_dir,
                             table_formats=config.get('harness.table_formats', ['csv']),
                             golden_dir=self.golden_dir)
        return VerificationService(storage, self.context, self.master_seed)

    def run_experiment(self, spec: ExperimentSpec) -> VerificationReport:
        """Run one experiment; spec.output_path overrides the output base directory."""
        service = self._service(spec.output_path)
        try:
            return service.run_experiment(spec)
        finally:
            self._last_run = service.storage.get_run_directory()

    def verify_all(self, parallel: bool = False) -> VerificationReport:
        """Run the full claim suite and return the consolidated report."""
        service = self._service()
        try:
            return service.verify_all(parallel=parallel)
        finally:
            self._last_run = service.storage.get_run_directory()
            logger.info(f"Verification data saved to: {self._last_run}")

    def get_run_directory(self) -> Optional[Path]:
        """Run directory of the most recent call, or None."""
        return self._last_run
