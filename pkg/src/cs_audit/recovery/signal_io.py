"""Signal CSV files: one `index,real,imag` line per nonzero entry."""
import logging
from pathlib import Path
from typing import Union

import pandas as pd

from ..core.signal import SparseSignal
from ..errors import InvalidInputError, OutputError

logger = logging.getLogger(__name__)

COLUMNS = ['index', 'real', 'imag']


def write_signal_csv(signal: SparseSignal, path: Union[str, Path]) -> Path:
    """
    Write the nonzero entries of a signal.

    Raises:
        OutputError: the file cannot be written
    """
    path = Path(path)
    df = pd.DataFrame({
        'index': list(signal.support),
        'real': [v.real for v in signal.values],
        'imag': [v.imag for v in signal.values],
    }, columns=COLUMNS)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(path, index=False, header=False, float_format='%.17g')
    except OSError as e:
        logger.error(f"Failed to write signal {path}: {e}")
        raise OutputError(f"Cannot write to {path}: {e}")
    logger.info(f"Wrote {signal.norm0} entries to {path}")
    return path


def read_signal_csv(path: Union[str, Path], length: int) -> SparseSignal:
    """
    Read a signal of the given length; zero values are dropped.

    Raises:
        InvalidInputError: missing file, malformed rows or out-of-range indices
    """
    path = Path(path)
    if not path.exists():
        raise InvalidInputError(f"Signal file not found: {path}")
    try:
        df = pd.read_csv(path, header=None, names=COLUMNS, comment='#', dtype=str, skipinitialspace=True)
        if not df.empty and str(df['index'].iloc[0]).strip() == 'index':
            df = df.iloc[1:]  # header line
        df = df.astype({'index': int, 'real': float, 'imag': float})
    except (ValueError, pd.errors.ParserError) as e:
        raise InvalidInputError(f"Malformed signal file {path}: {e}")
    pairs = [(int(r['index']), complex(r['real'], r['imag'])) for _, r in df.iterrows()
             if complex(r['real'], r['imag']) != 0]
    return SparseSignal.from_pairs(length, pairs)
