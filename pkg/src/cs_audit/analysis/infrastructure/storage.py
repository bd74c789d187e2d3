"""Orchestrates run directories, evidence files and golden comparison."""

import hashlib
import logging
import shutil
import threading
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from cs_audit.analysis.domain.report import canonical_json
from cs_audit.analysis.infrastructure.table_adapter import TableAdapter
from cs_audit.errors import OutputError

logger = logging.getLogger(__name__)

GOLDEN_MATCH = 'match'
GOLDEN_MISMATCH = 'mismatch'
GOLDEN_RECORDED = 'recorded'


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(1 << 16), b''):
            digest.update(chunk)
    return digest.hexdigest()


class RunStorage:
    """Manages one run directory and records every evidence file written into it."""

    def __init__(self, base_dir: str = "runs", table_formats: Optional[List[str]] = None,
                 golden_dir: Optional[str] = None):
        """
        Initialize storage manager.

        Args:
            base_dir: Base directory for all runs
            table_formats: Table formats to write ('csv', 'parquet'); csv is always written
            golden_dir: Directory of reference files to compare evidence against
        """
        self.base_dir = Path(base_dir)
        self.run_dir: Optional[Path] = None
        self.adapter = TableAdapter()
        self.table_formats = list(table_formats or ['csv'])
        self.golden_dir = Path(golden_dir) if golden_dir else None
        self.evidence: Dict[str, str] = {}
        self.golden: Dict[str, str] = {}
        self._lock = threading.Lock()

    def create_run_directory(self, name: Optional[str] = None) -> Path:
        """
        Create a new timestamped run directory.

        Raises:
            OutputError: If directory cannot be created
        """
        try:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
            self.run_dir = self.base_dir / f"{name or 'run'}_{timestamp}"
            self.run_dir.mkdir(parents=True, exist_ok=True)
            logger.info(f"Created run directory: {self.run_dir}")
            return self.run_dir
        except Exception as e:
            logger.error(f"Failed to create run directory: {e}")
            raise OutputError(f"Cannot create run directory: {e}")

    def copy_config(self, config_path: Optional[Path]) -> None:
        """Copy the configuration in effect into the run directory."""
        try:
            self._require_run_dir()
            if config_path is None or not Path(config_path).exists():
                logger.warning(f"Config file not found: {config_path}")
                return
            destination = self.run_dir / "config.yaml"
            shutil.copy2(config_path, destination)
            logger.info(f"Copied config to {destination}")
        except OutputError:
            raise
        except Exception as e:
            logger.error(f"Failed to copy config: {e}")
            raise OutputError(f"Cannot copy config: {e}")

    def save_table(self, relpath: str, df: pd.DataFrame) -> str:
        """
        Write a table as `<relpath>.csv` (plus Parquet when configured) and record it.

        Returns:
            Run-relative path of the CSV, usable as an evidence pointer
        """
        self._require_run_dir()
        csv_rel = f"{relpath}.csv"
        self.adapter.write_csv(df, self.run_dir / csv_rel)
        self._record(csv_rel)
        if 'parquet' in self.table_formats:
            self.adapter.write_parquet(df, self.run_dir / f"{relpath}.parquet")
        return csv_rel

    def save_json(self, relpath: str, payload: Any, record: bool = True) -> str:
        """Write canonical JSON; recorded as evidence unless record=False."""
        self._require_run_dir()
        path = self.run_dir / relpath
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(canonical_json(payload) + "\n")
        except OSError as e:
            logger.error(f"Failed to write {path}: {e}")
            raise OutputError(f"Cannot write to {path}: {e}")
        if record:
            self._record(relpath)
        return relpath

    def register_file(self, relpath: str) -> str:
        """Record a file some other writer already placed in the run directory."""
        self._require_run_dir()
        if not (self.run_dir / relpath).exists():
            raise OutputError(f"Evidence file missing: {relpath}")
        self._record(relpath)
        return relpath

    def path_for(self, relpath: str) -> Path:
        self._require_run_dir()
        return self.run_dir / relpath

    def _record(self, relpath: str) -> None:
        digest = sha256_file(self.run_dir / relpath)
        with self._lock:
            self.evidence[relpath] = digest
            if self.golden_dir is not None:
                self.golden[relpath] = self._compare_golden(relpath)

    def _compare_golden(self, relpath: str) -> str:
        """Byte comparison against the golden copy; a missing golden copy is recorded."""
        golden = self.golden_dir / relpath
        produced = self.run_dir / relpath
        if golden.exists():
            status = GOLDEN_MATCH if golden.read_bytes() == produced.read_bytes() else GOLDEN_MISMATCH
            if status == GOLDEN_MISMATCH:
                logger.warning(f"Golden mismatch: {relpath}")
            return status
        try:
            golden.parent.mkdir(parents=True, exist_ok=True)
            shutil.copy2(produced, golden)
        except OSError as e:
            raise OutputError(f"Cannot record golden file {golden}: {e}")
        return GOLDEN_RECORDED

    def _require_run_dir(self) -> None:
        if self.run_dir is None:
            raise OutputError("Run directory not created")

    def get_run_directory(self) -> Optional[Path]:
        """Get current run directory path."""
        return self.run_dir
