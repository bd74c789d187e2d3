"""Tests for colex enumeration, rank decisions, maximal robustness and spark."""
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest
import yaml

from cs_audit.constructions import build_frames, make_symmetric_omega
from cs_audit.core import DenseMatrix, Precision
from cs_audit.errors import BudgetExceededError, InvalidInputError, NumericalError
from cs_audit.robustness import (
    Mode,
    colex_rank,
    colex_unrank,
    exact_rank_cyclotomic,
    maximal_robustness,
    numeric_rank,
    spark,
    warmup_kernels,
)
from cs_audit.robustness.exact import exact_subset_dependent
from cs_audit.robustness.rank import batch_dependence
from cs_audit.robustness.subsets import iter_colex_batches, partition_ranges, subset_count


def colex_sorted(n, k):
    return sorted(combinations(range(n), k), key=lambda s: tuple(reversed(s)))


class TestColex:
    """Test cases for colex ranking and batch enumeration."""

    def test_first_subsets(self):
        """Colex order compares subsets by their largest element first."""
        assert colex_sorted(5, 3)[:5] == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3), (0, 1, 4)]
        assert colex_rank((0, 1, 2)) == 0
        assert colex_rank((1, 2, 3)) == 3
        assert colex_rank((0, 1, 4)) == 4

    def test_unrank_inverts_rank(self):
        for rank, subset in enumerate(colex_sorted(9, 4)):
            assert colex_rank(subset) == rank
            assert colex_unrank(rank, 9, 4) == subset

    def test_batches_cover_range_in_order(self):
        warmup_kernels()
        expected = colex_sorted(8, 3)
        rows = []
        for start, batch in iter_colex_batches(8, 3, 0, subset_count(8, 3), 7):
            assert start == len(rows)
            rows.extend(tuple(r) for r in batch.tolist())
        assert rows == expected

    def test_batches_from_middle(self):
        expected = colex_sorted(7, 4)[10:20]
        rows = [tuple(r) for _, b in iter_colex_batches(7, 4, 10, 20, 3) for r in b.tolist()]
        assert rows == expected

    def test_empty_subset(self):
        batches = list(iter_colex_batches(5, 0, 0, 1, 16))
        assert len(batches) == 1 and batches[0][1].shape == (1, 0)

    def test_partition_ranges(self):
        ranges = partition_ranges(10, 3)
        assert ranges == [(0, 4), (4, 7), (7, 10)]
        assert partition_ranges(2, 5) == [(0, 1), (1, 2)]


class TestRank:
    """Test cases for numeric and exact rank."""

    def test_numeric_rank(self, frames5):
        _, psi, _, phi = frames5
        assert numeric_rank(phi) == 3
        assert numeric_rank(phi.columns([0, 1, 2])) == 2
        assert numeric_rank(psi.columns([0, 1, 2])) == 3

    def test_rank_deficient_matrix(self):
        m = DenseMatrix(np.array([[1.0, 2.0], [2.0, 4.0]]), Precision.DOUBLE, True, "r1")
        assert numeric_rank(m) == 1

    def test_exact_oracle_on_subsets(self, frames5):
        _, psi, _, phi = frames5
        assert exact_subset_dependent(phi.exact_form, (0, 1, 2))
        assert exact_subset_dependent(phi.exact_form, (3, 4))
        assert not exact_subset_dependent(phi.exact_form, (0, 1))
        assert not exact_subset_dependent(psi.exact_form, (0, 1, 2))
        assert exact_rank_cyclotomic(phi.exact_form.select_columns([0, 1, 2])) == 2

    def test_batched_svd_failure_is_numerical(self, monkeypatch):
        def failing_svd(*args, **kwargs):
            raise np.linalg.LinAlgError("SVD did not converge")

        monkeypatch.setattr(np.linalg, 'svd', failing_svd)
        with pytest.raises(NumericalError):
            batch_dependence(np.ones((2, 3, 2)), 1e-10)

    def test_batch_dependence(self):
        stack = np.array([[[1.0, 2.0], [2.0, 4.0]], [[1.0, 0.0], [0.0, 1.0]]])
        dependent, bottom = batch_dependence(stack, 1e-10)
        assert dependent.tolist() == [True, False]
        assert bottom[1] == pytest.approx(1.0)


class TestMaximalRobustness:
    """Test cases for the maximal robustness verdict."""

    def test_phi5_not_robust(self, frames5):
        """Const, cos 1 and cos 2 agree on frequencies 1 and 4, so the first subset is dependent."""
        _, _, _, phi = frames5
        report = maximal_robustness(phi)
        assert report.verdict == 'not_robust'
        assert report.witness == (0, 1, 2)
        assert report.subsets_checked == 1
        assert report.total_subsets == 10

    def test_psi5_robust(self, frames5):
        _, psi, _, _ = frames5
        report = maximal_robustness(psi)
        assert report.robust
        assert report.witness is None
        assert report.subsets_checked == 10
        assert report.min_singular_value_seen > 1e-3

    @pytest.mark.parametrize("modulus", [5, 7, 11, 13])
    def test_both_modes_agree(self, modulus):
        """Floating and exact verdicts coincide subset for subset."""
        omega = make_symmetric_omega(modulus)
        psi, _, phi = build_frames(modulus, omega)
        psi_report = maximal_robustness(psi, Mode.BOTH)
        phi_report = maximal_robustness(phi, Mode.BOTH)
        assert psi_report.verdict == 'robust'
        assert psi_report.dependent_subsets == 0
        assert phi_report.verdict == 'not_robust'
        assert phi_report.dependent_subsets > 0
        assert phi_report.arithmetic == 'both'

    def test_exact_mode_witness(self, frames7):
        _, _, _, phi = frames7
        floating = maximal_robustness(phi, Mode.FLOATING)
        exact = maximal_robustness(phi, Mode.EXACT)
        assert floating.witness == exact.witness
        assert floating.subsets_checked == exact.subsets_checked

    def test_workers_do_not_change_report(self, frames7):
        """Partitioned enumeration merges to the single-worker witness."""
        _, _, _, phi = frames7
        one = maximal_robustness(phi, workers=1)
        two = maximal_robustness(phi, workers=2)
        assert one.witness == two.witness
        assert one.subsets_checked == two.subsets_checked

    def test_budget_refusal(self):
        omega = make_symmetric_omega(31)
        psi, _, _ = build_frames(31, omega)
        with pytest.raises(BudgetExceededError):
            maximal_robustness(psi)

    def test_exact_mode_limited_modulus(self):
        omega = make_symmetric_omega(17)
        psi, _, _ = build_frames(17, omega)
        with pytest.raises(InvalidInputError):
            maximal_robustness(psi, Mode.EXACT)

    def test_exact_mode_needs_exact_form(self):
        m = DenseMatrix(np.array([[1.0, 0.0, 1.0]]), Precision.DOUBLE, True, "plain")
        with pytest.raises(InvalidInputError):
            maximal_robustness(m, Mode.EXACT)

    def test_tall_matrix_rejected(self):
        m = DenseMatrix(np.ones((3, 2)), Precision.DOUBLE, True, "tall")
        with pytest.raises(InvalidInputError):
            maximal_robustness(m)


class TestSpark:
    """Test cases for spark."""

    def test_phi5_spark_two(self, frames5):
        """The two sine columns of Phi(5) are parallel."""
        _, _, _, phi = frames5
        result = spark(phi)
        assert result.spark == 2
        assert result.witness == (3, 4)
        assert not result.full

    def test_duplicated_column(self):
        """The identity padded with a copy of its first column has spark 2."""
        m = DenseMatrix(np.hstack([np.eye(3), np.eye(3)[:, :1]]), Precision.DOUBLE, True, "padded")
        result = spark(m)
        assert result.spark == 2
        assert result.witness == (0, 3)
        assert not result.full
        assert not maximal_robustness(m).robust

    def test_psi_spark_full(self, frames7):
        _, psi, _, _ = frames7
        result = spark(psi, Mode.BOTH)
        assert result.full
        assert result.spark == psi.rows + 1
        assert result.to_dict()['spark'] == 'full'

    def test_spark_consistent_with_robustness(self):
        for modulus in (5, 7, 11):
            omega = make_symmetric_omega(modulus)
            psi, _, phi = build_frames(modulus, omega)
            for a in (psi, phi):
                robust = maximal_robustness(a).robust
                assert robust == (spark(a).spark == a.rows + 1)


@pytest.mark.slow
class TestAcceptanceScale:
    """Exhaustive enumeration at N = 13."""

    def test_n13_both_modes(self):
        omega = make_symmetric_omega(13)
        psi, _, phi = build_frames(13, omega)
        assert maximal_robustness(psi, Mode.BOTH).robust
        report = maximal_robustness(phi, Mode.BOTH)
        assert not report.robust
        assert exact_subset_dependent(phi.exact_form, report.witness)


GOLDEN = yaml.safe_load((Path(__file__).parent / "golden" / "frames.yaml").read_text())


def _frame(modulus, name):
    psi, _, phi = build_frames(modulus, make_symmetric_omega(modulus))
    return psi if name == 'psi' else phi


class TestGoldenVerdicts:
    """Reports must reproduce the reference verdicts in tests/golden/frames.yaml."""

    @pytest.mark.parametrize("row", GOLDEN['robustness'], ids=lambda r: f"{r['frame']}{r['modulus']}")
    def test_robustness(self, row):
        report = maximal_robustness(_frame(row['modulus'], row['frame']))
        assert report.verdict == row['verdict']
        expected = tuple(row['witness']) if row['witness'] is not None else None
        assert report.witness == expected
        assert report.subsets_checked == row['subsets_checked']

    @pytest.mark.parametrize("row", GOLDEN['spark'], ids=lambda r: f"{r['frame']}{r['modulus']}")
    def test_spark(self, row):
        result = spark(_frame(row['modulus'], row['frame']), Mode.BOTH)
        assert result.spark == row['spark']
        assert result.full == row['full']
        expected = tuple(row['witness']) if row['witness'] is not None else None
        assert result.witness == expected
