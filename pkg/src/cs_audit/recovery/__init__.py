"""P0 enumeration, uniqueness checks and basis pursuit."""
from .measurement import dft_measure, measure
from .result import RecoveryResult
from .p0 import NOT_UNIQUE, UNDECIDED, UNIQUE, UniquenessVerdict, p0_solve, uniqueness_check
from .basis_pursuit import BasisPursuitParams, basis_pursuit, complex_shrink
from .signal_io import read_signal_csv, write_signal_csv

__all__ = [
    'dft_measure', 'measure', 'RecoveryResult',
    'UNIQUE', 'NOT_UNIQUE', 'UNDECIDED', 'UniquenessVerdict', 'p0_solve', 'uniqueness_check',
    'BasisPursuitParams', 'basis_pursuit', 'complex_shrink',
    'read_signal_csv', 'write_signal_csv',
]
