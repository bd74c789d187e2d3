"""Maximal robustness and spark by exhaustive colex column-subset enumeration."""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..config import config
from ..core.matrix import DenseMatrix
from ..core.precision import rank_tolerance
from ..errors import BudgetExceededError, InvalidInputError, NumericalError, VerdictMismatchError
from .exact import exact_rank_cyclotomic, exact_subset_dependent
from .rank import batch_dependence, singular_values, subset_dependence_extended
from .subsets import colex_unrank, iter_colex_batches, partition_ranges, subset_count

logger = logging.getLogger(__name__)

ROBUST = 'robust'
NOT_ROBUST = 'not_robust'


class Mode(str, Enum):
    """Arithmetic used to decide column-subset dependence."""

    FLOATING = "floating"
    EXACT = "exact"
    BOTH = "both"

    @classmethod
    def parse(cls, value) -> "Mode":
        try:
            return value if isinstance(value, Mode) else cls(str(value).lower())
        except ValueError:
            raise InvalidInputError(f"Unknown mode {value!r} (expected floating, exact or both)")


@dataclass
class RobustnessReport:
    """Verdict on whether every n_rows columns are independent."""

    matrix_id: str
    n_rows: int
    n_cols: int
    verdict: str
    witness: Optional[Tuple[int, ...]]
    subsets_checked: int
    min_singular_value_seen: float
    arithmetic: str
    precision: str
    total_subsets: int
    dependent_subsets: Optional[int] = None

    @property
    def robust(self) -> bool:
        return self.verdict == ROBUST

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out['witness'] = list(self.witness) if self.witness is not None else None
        return out


@dataclass
class SparkResult:
    """Smallest dependent column subset, or 'full' when none up to n_rows exists."""

    matrix_id: str
    n_rows: int
    spark: int
    full: bool
    witness: Optional[Tuple[int, ...]]
    arithmetic: str
    subsets_checked: int

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out['spark'] = 'full' if self.full else self.spark
        out['spark_value'] = self.spark
        out['witness'] = list(self.witness) if self.witness is not None else None
        return out


@dataclass
class _ScanTask:
    matrix: DenseMatrix
    size: int
    start: int
    stop: int
    exact: bool
    collect_all: bool
    tau_rank: float
    batch_size: int


@dataclass
class _ScanOutcome:
    first_dependent: Optional[int] = None
    dependent: List[int] = field(default_factory=list)
    checked: int = 0
    min_sv: float = float('inf')


def _scan(task: _ScanTask) -> _ScanOutcome:
    """Scan colex ranks [start, stop) of `size`-subsets; stops at the first hit unless collecting."""
    a = task.matrix
    double = a.to_numpy()
    out = _ScanOutcome()
    for first_rank, batch in iter_colex_batches(a.cols, task.size, task.start, task.stop, task.batch_size):
        stack = np.moveaxis(double[:, batch], 1, 0)
        float_dep, bottom = batch_dependence(stack, task.tau_rank)
        for offset, subset in enumerate(batch):
            rank = first_rank + offset
            out.checked += 1
            if task.exact:
                dependent = exact_subset_dependent(a.exact_form, subset.tolist())
                sigma = float(bottom[offset])
            elif a.is_extended:
                dependent, sigma = subset_dependence_extended(a, subset.tolist(), task.tau_rank)
            else:
                dependent, sigma = bool(float_dep[offset]), float(bottom[offset])
            out.min_sv = min(out.min_sv, sigma)
            if dependent:
                if out.first_dependent is None:
                    out.first_dependent = rank
                out.dependent.append(rank)
                if not task.collect_all:
                    return out
    return out


def _run_scan(matrix: DenseMatrix, size: int, exact: bool, collect_all: bool,
              tau_rank: float, workers: int) -> _ScanOutcome:
    """Partition the colex range over workers and merge deterministically."""
    total = subset_count(matrix.cols, size)
    batch_size = int(config.get('robustness.batch_size', 4096))
    tasks = [_ScanTask(matrix, size, lo, hi, exact, collect_all, tau_rank, batch_size)
             for lo, hi in partition_ranges(total, workers)]
    if len(tasks) == 1:
        results = [_scan(tasks[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(tasks)) as pool:
            results = list(pool.map(_scan, tasks))
    merged = _ScanOutcome()
    for res in results:
        merged.checked += res.checked
        merged.min_sv = min(merged.min_sv, res.min_sv)
        merged.dependent.extend(res.dependent)
        if res.first_dependent is not None and (
                merged.first_dependent is None or res.first_dependent < merged.first_dependent):
            merged.first_dependent = res.first_dependent
    merged.dependent.sort()
    return merged


def _check_budget(n_cols: int, total: int, force: bool) -> None:
    max_cols = int(config.get('robustness.max_columns', 30))
    budget = int(config.get('robustness.subset_budget', 10_000_000))
    if force:
        if n_cols > max_cols or total > budget:
            logger.warning(f"Budget override: {total} subsets over {n_cols} columns")
        return
    if n_cols > max_cols:
        raise BudgetExceededError(f"{n_cols} columns exceeds the enumeration guard of {max_cols}")
    if total > budget:
        raise BudgetExceededError(f"{total} subsets exceeds the enumeration budget of {budget}")


def _prepare(a: DenseMatrix, mode: Mode) -> None:
    if a.rows > a.cols:
        raise InvalidInputError(f"{a.label}: needs n_rows <= n_cols, got {a.shape}")
    if mode is not Mode.FLOATING and a.exact_form is None:
        raise InvalidInputError(f"{a.label}: no exact description, exact mode unavailable")


def _verify_witness(a: DenseMatrix, witness: Tuple[int, ...], exact: bool, tau_rank: float) -> None:
    sub = a.columns(witness)
    if exact:
        ok = exact_rank_cyclotomic(sub.exact_form) < len(witness)
    else:
        values = singular_values(sub)
        ok = values[-1] <= tau_rank * values[0]
    if not ok:
        raise NumericalError(f"{a.label}: witness {witness} does not re-verify as dependent")


def _scan_modes(a: DenseMatrix, size: int, mode: Mode, collect_all: bool, tau_rank: float,
                workers: int) -> _ScanOutcome:
    """Run floating and/or exact scans; in both mode the dependent sets must coincide."""
    if mode is Mode.BOTH:
        floating = _run_scan(a, size, False, True, tau_rank, workers)
        exact = _run_scan(a, size, True, True, tau_rank, workers)
        f_set, e_set = set(floating.dependent), set(exact.dependent)
        if f_set != e_set:
            to_subsets = lambda ranks: [colex_unrank(r, a.cols, size) for r in ranks]
            raise VerdictMismatchError(a.label, to_subsets(f_set - e_set), to_subsets(e_set - f_set))
        exact.min_sv = floating.min_sv
        return exact
    return _run_scan(a, size, mode is Mode.EXACT, collect_all, tau_rank, workers)


def maximal_robustness(a: DenseMatrix, mode=Mode.FLOATING, force_budget: bool = False,
                       workers: Optional[int] = None, tau_rank: Optional[float] = None) -> RobustnessReport:
    """
    Decide whether every n_rows columns of `a` are linearly independent.

    Subsets are scanned in colex order; the first dependent one is the witness.

    Args:
        a: Matrix with n_rows <= n_cols
        mode: floating, exact or both (both requires subset-for-subset agreement)
        force_budget: Allow enumeration beyond the configured budget
        workers: Parallel workers over disjoint colex ranges
        tau_rank: Relative cutoff for the floating path

    Raises:
        BudgetExceededError: Enumeration too large without force_budget
        VerdictMismatchError: Floating and exact disagree (mode both)
    """
    mode = Mode.parse(mode)
    _prepare(a, mode)
    tau_rank = rank_tolerance(a.precision) if tau_rank is None else tau_rank
    workers = workers or int(config.get('robustness.workers', 1))
    total = subset_count(a.cols, a.rows)
    _check_budget(a.cols, total, force_budget)

    logger.info(f"Maximal robustness of {a.label} {a.shape}: {total} subsets, mode={mode.value}")
    scan = _scan_modes(a, a.rows, mode, False, tau_rank, workers)
    witness = None
    checked = total
    if scan.first_dependent is not None:
        witness = colex_unrank(scan.first_dependent, a.cols, a.rows)
        _verify_witness(a, witness, mode is not Mode.FLOATING, tau_rank)
        if mode is not Mode.BOTH:
            checked = scan.first_dependent + 1
    report = RobustnessReport(
        matrix_id=a.label,
        n_rows=a.rows,
        n_cols=a.cols,
        verdict=NOT_ROBUST if witness is not None else ROBUST,
        witness=witness,
        subsets_checked=checked,
        min_singular_value_seen=scan.min_sv,
        arithmetic=mode.value,
        precision=a.precision.value,
        total_subsets=total,
        dependent_subsets=len(scan.dependent) if mode is Mode.BOTH else None,
    )
    logger.info(f"{a.label}: {report.verdict} (witness={witness}, checked={checked})")
    return report


def spark(a: DenseMatrix, mode=Mode.FLOATING, force_budget: bool = False,
          workers: Optional[int] = None, tau_rank: Optional[float] = None) -> SparkResult:
    """
    Size of the smallest dependent column subset, searched by ascending size.

    Returns spark = n_rows + 1 with full=True when no subset of size <= n_rows is dependent.
    """
    mode = Mode.parse(mode)
    _prepare(a, mode)
    tau_rank = rank_tolerance(a.precision) if tau_rank is None else tau_rank
    workers = workers or int(config.get('robustness.workers', 1))
    total = sum(subset_count(a.cols, s) for s in range(1, a.rows + 1))
    _check_budget(a.cols, total, force_budget)

    checked = 0
    for size in range(1, a.rows + 1):
        scan = _scan_modes(a, size, mode, False, tau_rank, workers)
        if scan.first_dependent is not None:
            witness = colex_unrank(scan.first_dependent, a.cols, size)
            _verify_witness(a, witness, mode is not Mode.FLOATING, tau_rank)
            checked += scan.first_dependent + 1
            logger.info(f"{a.label}: spark {size}, witness {witness}")
            return SparkResult(a.label, a.rows, size, False, witness, mode.value, checked)
        checked += subset_count(a.cols, size)
    logger.info(f"{a.label}: spark full ({a.rows + 1})")
    return SparkResult(a.label, a.rows, a.rows + 1, True, None, mode.value, checked)

