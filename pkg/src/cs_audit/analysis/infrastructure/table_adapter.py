"""Low-level table file operations (CSV, optionally Parquet)."""

import logging
from pathlib import Path
import pandas as pd

from cs_audit.errors import OutputError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'


class TableAdapter:
    """Handles low-level CSV and Parquet file operations."""

    @staticmethod
    def write_csv(df: pd.DataFrame, filepath: Path) -> None:
        """
        Write DataFrame to CSV with round-trip float formatting.

        Raises:
            OutputError: If file cannot be written
        """
        try:
            filepath.parent.mkdir(parents=True, exist_ok=True)
            df.to_csv(filepath, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
            logger.info(f"Wrote {len(df)} rows to {filepath}")
        except Exception as e:
            logger.error(f"Failed to write CSV file {filepath}: {e}")
            raise OutputError(f"Cannot write to {filepath}: {e}")

    @staticmethod
    def write_parquet(
        df: pd.DataFrame,
        filepath: Path,
        compression: str = 'snappy'
    ) -> None:
        """
        Write DataFrame to Parquet file.

        Args:
            df: DataFrame to write
            filepath: Path to output file
            compression: Compression algorithm ('snappy', 'gzip', 'brotli')

        Raises:
            OutputError: If file cannot be written
        """
        try:
            filepath.parent.mkdir(parents=True, exist_ok=True)
            df.to_parquet(
                filepath,
                engine='pyarrow',
                compression=compression,
                index=False
            )
            logger.info(f"Wrote {len(df)} rows to {filepath}")
        except Exception as e:
            logger.error(f"Failed to write Parquet file {filepath}: {e}")
            raise OutputError(f"Cannot write to {filepath}: {e}")
