"""Tests for measurements, P0 enumeration, uniqueness and basis pursuit."""
import numpy as np
import pytest
import scipy.linalg

from cs_audit.constructions import build_frames, make_symmetric_omega
from cs_audit.core import DenseMatrix, Precision, SparseSignal
from cs_audit.errors import InvalidInputError, NumericalError
from cs_audit.recovery import (
    NOT_UNIQUE,
    UNIQUE,
    BasisPursuitParams,
    basis_pursuit,
    complex_shrink,
    dft_measure,
    measure,
    p0_solve,
    read_signal_csv,
    uniqueness_check,
    write_signal_csv,
)


class TestMeasurement:
    """Test cases for partial spectrum measurements."""

    def test_dft_measure_matches_formula(self, frames7):
        omega, psi, _, _ = frames7
        f = SparseSignal(7, (2, 5), (1.5, -2j))
        y = dft_measure(f, omega)
        w = np.exp(2j * np.pi / 7)
        expected = [(1.5 * w ** (t * 2) - 2j * w ** (t * 5)) / np.sqrt(7) for t in omega.indices]
        assert np.allclose(y, expected, atol=1e-12)
        assert np.allclose(y, measure(psi, f), atol=1e-14)

    def test_dft_measure_length_mismatch(self, frames5):
        omega = frames5[0]
        with pytest.raises(InvalidInputError):
            dft_measure(SparseSignal(7, (0,), (1.0,)), omega)


class TestP0:
    """Test cases for brute-force l0 minimisation."""

    def test_phi5_has_three_minimisers(self, frames5):
        """Any two of const, cos 1, cos 2 reproduce y."""
        _, _, _, phi = frames5
        f = SparseSignal(5, (0, 1), (1.0, 1.0))
        result = p0_solve(phi, measure(phi, f), 2, real_only=True)
        assert result.feasible
        assert result.sparsity_found == 2
        assert [s.support for s in result.solutions] == [(0, 1), (0, 2), (1, 2)]
        assert not result.unique

    def test_phi5_uniqueness_fails(self, frames5):
        _, _, _, phi = frames5
        f = SparseSignal(5, (0, 1), (1.0, 1.0))
        verdict = uniqueness_check(phi, f, real_only=True)
        assert verdict.verdict == NOT_UNIQUE
        assert verdict.certificate.support in {(0, 2), (1, 2)}
        assert np.linalg.norm(measure(phi, verdict.certificate) - measure(phi, f)) < 1e-8

    def test_psi5_one_sparse_unique(self, frames5):
        _, psi, _, _ = frames5
        f = SparseSignal(5, (2,), (3.0,))
        verdict = uniqueness_check(psi, f)
        assert verdict.verdict == UNIQUE
        assert verdict.certificate is None
        found = verdict.result.solutions[0]
        assert found.support == (2,)
        assert abs(found.values[0] - 3.0) < 1e-10

    def test_zero_measurement_is_zero_sparse(self, frames5):
        _, psi, _, _ = frames5
        result = p0_solve(psi, np.zeros(3), 2)
        assert result.sparsity_found == 0
        assert result.solutions[0].norm0 == 0

    def test_infeasible(self, frames5):
        """Every Psi(5) column is dense, so a spike is out of reach at sparsity 1."""
        _, psi, _, _ = frames5
        result = p0_solve(psi, np.array([1.0, 0.0, 0.0]), 1)
        assert not result.feasible
        assert result.sparsity_found == -1
        assert result.solutions == []
        assert result.supports_enumerated == 1 + 5

    def test_s_max_above_rows(self, frames5):
        _, psi, _, _ = frames5
        with pytest.raises(InvalidInputError):
            p0_solve(psi, np.zeros(3), 4)

    def test_measurement_length_mismatch(self, frames5):
        _, psi, _, _ = frames5
        with pytest.raises(InvalidInputError):
            p0_solve(psi, np.zeros(4), 1)

    def test_solution_cap_sets_overflow(self, frames5):
        _, _, _, phi = frames5
        f = SparseSignal(5, (0, 1), (1.0, 1.0))
        result = p0_solve(phi, measure(phi, f), 2, max_solutions=1, real_only=True)
        assert len(result.solutions) == 1
        assert result.overflow
        assert not result.unique

    def test_rejects_signal_failing_own_measurements(self, frames5):
        """A negative threshold makes every support infeasible."""
        _, psi, _, _ = frames5
        f = SparseSignal(5, (1,), (1.0,))
        with pytest.raises(NumericalError):
            uniqueness_check(psi, f, tau_feas=-1.0)

    @pytest.mark.parametrize("real_only", [False, True])
    def test_least_squares_failure_is_numerical(self, frames5, monkeypatch, real_only):
        def failing_lstsq(*args, **kwargs):
            raise scipy.linalg.LinAlgError("SVD did not converge")

        monkeypatch.setattr(scipy.linalg, 'lstsq', failing_lstsq)
        _, psi, _, _ = frames5
        y = measure(psi, SparseSignal(5, (1,), (1.0,)))
        with pytest.raises(NumericalError):
            p0_solve(psi, y, 1, real_only=real_only)


class TestBasisPursuit:
    """Test cases for the ADMM basis pursuit solver."""

    def test_complex_shrink(self):
        out = complex_shrink(np.array([3 + 4j, 0.5 + 0j, -2 + 0j]), 1.0)
        assert np.allclose(out, [2.4 + 3.2j, 0.0, -1.0])

    def test_complex_shrink_real(self):
        out = complex_shrink(np.array([2.0, -0.3]), 0.5)
        assert np.allclose(out, [1.5, 0.0])

    def test_recovers_one_sparse(self):
        """Coherence below one guarantees l1 recovery of a single spike."""
        omega = make_symmetric_omega(11)
        psi, _, _ = build_frames(11, omega)
        f = SparseSignal(11, (3,), (2.0,))
        result = basis_pursuit(psi, measure(psi, f))
        assert result.converged
        assert result.residual_l2 < 1e-6
        assert np.linalg.norm(result.dense - f.to_dense()) < 1e-5
        assert result.solutions[0].support == (3,)

    def test_zero_measurement(self):
        omega = make_symmetric_omega(7)
        psi, _, _ = build_frames(7, omega)
        result = basis_pursuit(psi, np.zeros(psi.rows))
        assert result.converged
        assert result.iterations <= 1
        assert np.all(result.dense == 0)
        assert result.sparsity_found == 0

    @pytest.mark.parametrize("modulus", [7, 11])
    def test_l1_never_exceeds_source(self, modulus):
        """The source signal is feasible, so the l1 minimiser cannot be heavier."""
        omega = make_symmetric_omega(modulus)
        psi, _, _ = build_frames(modulus, omega)
        params = BasisPursuitParams.from_config()
        rng = np.random.default_rng(modulus)
        for s in (1, 2, 3):
            for _ in range(3):
                support = tuple(sorted(rng.choice(modulus, size=s, replace=False).tolist()))
                values = tuple(rng.normal(size=s) + 1j * rng.normal(size=s))
                f = SparseSignal(modulus, support, values)
                result = basis_pursuit(psi, measure(psi, f), params)
                assert np.sum(np.abs(result.dense)) <= f.norm1 + 1e-6
                if result.converged:
                    assert result.residual_l2 <= params.tol_primal * (1 + 1e-9)

    def test_params_from_config_overrides(self):
        params = BasisPursuitParams.from_config(rho=2.0, max_iter=None)
        assert params.rho == 2.0
        assert params.max_iter == 50000

    @pytest.mark.parametrize("overrides", [
        {'rho': 0.0}, {'max_iter': 0}, {'tol_primal': -1.0}, {'tol_dual': 0.0},
    ])
    def test_invalid_params(self, overrides):
        with pytest.raises(InvalidInputError):
            BasisPursuitParams.from_config(**overrides)

    def test_rank_deficient_rejected(self):
        a = DenseMatrix(np.array([[1.0, 1.0], [2.0, 2.0]]), Precision.DOUBLE, True, "deficient")
        with pytest.raises(InvalidInputError):
            basis_pursuit(a, np.array([1.0, 2.0]))


class TestSignalIO:
    """Test cases for signal CSV files."""

    def test_write_then_read(self, tmp_path):
        f = SparseSignal(8, (1, 6), (0.25 - 1j, 3.0))
        path = write_signal_csv(f, tmp_path / "sig" / "f.csv")
        assert path.read_text().splitlines()[0].startswith("1,")
        assert read_signal_csv(path, 8) == f

    def test_header_and_zero_rows(self, tmp_path):
        path = tmp_path / "f.csv"
        path.write_text("index,real,imag\n0,1.0,0.0\n3,0.0,0.0\n")
        g = read_signal_csv(path, 4)
        assert g.support == (0,)

    def test_out_of_range_index(self, tmp_path):
        path = tmp_path / "f.csv"
        path.write_text("9,1.0,0.0\n")
        with pytest.raises(InvalidInputError):
            read_signal_csv(path, 4)

    def test_headerless_first_row_kept(self, tmp_path):
        path = tmp_path / "f.csv"
        path.write_text("2,3.0,0.0\n4,1.0,0.0\n")
        g = read_signal_csv(path, 5)
        assert g.support == (2, 4)
        assert g.values == (3.0, 1.0)

    def test_single_row_out_of_range(self, tmp_path):
        path = tmp_path / "f.csv"
        path.write_text("5,1.0,0.0\n")
        with pytest.raises(InvalidInputError):
            read_signal_csv(path, 5)

    @pytest.mark.parametrize("text", ["1,abc,0.0\n", "index,real,imag\n1.5,1.0,0.0\n", "1,1.0,0.0\n1,2.0,0.0\n"])
    def test_malformed_rows(self, tmp_path, text):
        path = tmp_path / "f.csv"
        path.write_text(text)
        with pytest.raises(InvalidInputError):
            read_signal_csv(path, 4)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InvalidInputError):
            read_signal_csv(tmp_path / "nope.csv", 4)
