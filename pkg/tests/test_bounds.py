"""Tests for coherence, the sparsity budget and DCT sparsification."""
import math

import numpy as np
import pandas as pd
import pytest

from cs_audit.bounds import (
    BoundQuery,
    coherence,
    dct_forward,
    dct_inverse,
    max_sparsity,
    psnr,
    required_measurements,
    sparsify,
    synthetic_signal,
    write_comparison_csv,
)
from cs_audit.core import DenseMatrix, Precision
from cs_audit.errors import InvalidInputError


class TestBudget:
    """Test cases for the measurement bound."""

    def test_reference_budget(self):
        """S(1024, 512, 1, 46) is about 1.6."""
        budget = max_sparsity(BoundQuery(1024, 512, 1.0, 46.0))
        assert 1.55 <= budget.s <= 1.65
        assert budget.s_floor == 1
        assert budget.to_dict()['s_ceil'] == 2
        assert budget.to_dict()['log_base'] == 'e'

    def test_default_constant_from_config(self):
        assert BoundQuery(1024, 512).c_const == 46.0

    def test_budget_shrinks_with_coherence(self):
        low = max_sparsity(BoundQuery(1024, 512, 1.0))
        high = max_sparsity(BoundQuery(1024, 512, 2.0))
        assert high.s == pytest.approx(low.s / 4)

    @pytest.mark.parametrize("n,m,mu,c", [
        (1, 1, 1.0, 46.0),
        (1024, 0, 1.0, 46.0),
        (1024, 2048, 1.0, 46.0),
        (1024, 512, 0.5, 46.0),
        (1024, 512, 33.0, 46.0),
        (1024, 512, 1.0, 0.0),
    ])
    def test_invalid_queries(self, n, m, mu, c):
        with pytest.raises(InvalidInputError):
            BoundQuery(n, m, mu, c)

    def test_required_measurements(self):
        req = required_measurements(2, 1024, 1.0, 46.0)
        assert req.m == 638
        assert not req.infeasible
        assert req.to_dict()['reason'] is None

    def test_required_measurements_infeasible(self):
        req = required_measurements(200, 1024, 1.0, 46.0)
        assert req.m > 1024
        assert req.infeasible
        assert req.to_dict()['reason'] == 'exceeds signal length'

    def test_required_measurements_invalid(self):
        with pytest.raises(InvalidInputError):
            required_measurements(0, 1024, 1.0)
        with pytest.raises(InvalidInputError):
            required_measurements(2, 1024, 40.0)


class TestCoherence:
    """Test cases for mutual coherence."""

    def test_spike_and_fourier_maximally_incoherent(self):
        spikes = DenseMatrix.identity(16)
        fourier = DenseMatrix(np.fft.fft(np.eye(16), norm='ortho'), Precision.DOUBLE, False, "dft16")
        assert coherence(spikes, fourier) == pytest.approx(1.0)

    def test_basis_with_itself(self):
        spikes = DenseMatrix.identity(16)
        assert coherence(spikes, spikes) == pytest.approx(4.0)

    def test_rejects_non_orthonormal(self):
        spikes = DenseMatrix.identity(4)
        scaled = DenseMatrix(2.0 * np.eye(4), Precision.DOUBLE, True, "scaled")
        with pytest.raises(InvalidInputError):
            coherence(spikes, scaled)

    def test_rejects_shape_mismatch(self):
        with pytest.raises(InvalidInputError):
            coherence(DenseMatrix.identity(4), DenseMatrix.identity(8))


class TestSparsify:
    """Test cases for DCT sparsification."""

    def test_dct_roundtrip_and_parseval(self):
        x = np.random.default_rng(7).standard_normal(4096)
        c = dct_forward(x)
        assert np.max(np.abs(dct_inverse(c) - x)) < 1e-10
        assert abs(np.sum(c ** 2) - np.sum(x ** 2)) / np.sum(x ** 2) < 1e-10

    def test_dct_rejects_empty(self):
        with pytest.raises(InvalidInputError):
            dct_forward([])

    def test_keep_everything(self):
        x = synthetic_signal(4096)
        result = sparsify(x, 1.0)
        assert result.kept == 4096
        assert math.isinf(result.psnr_db)
        assert result.to_dict()['psnr_db'] == '+inf'

    def test_keep_nothing(self):
        x = synthetic_signal(4096)
        result = sparsify(x, 0.0)
        assert result.kept == 0
        assert np.all(result.reconstruction == 0)
        assert math.isfinite(result.psnr_db)

    def test_kept_count_rounds_up(self):
        """0.002 * 4096 = 8.192 rounds up to 9 coefficients."""
        result = sparsify(synthetic_signal(4096), 0.002)
        assert result.kept == 9
        assert np.count_nonzero(np.abs(dct_forward(result.reconstruction)) > 1e-9) <= 9

    def test_psnr_monotone_in_keep_fraction(self):
        x = synthetic_signal(4096)
        values = [sparsify(x, f).psnr_db for f in (0.0, 0.002, 0.02, 0.2, 1.0)]
        assert values == sorted(values)

    def test_invalid_keep_fraction(self):
        with pytest.raises(InvalidInputError):
            sparsify(synthetic_signal(64), 1.5)

    def test_psnr(self):
        x = np.array([1.0, -1.0, 0.5, 0.0])
        assert math.isinf(psnr(x, x))
        assert psnr(x, x + 0.1) == pytest.approx(20.0)

    def test_synthetic_signal_deterministic(self):
        assert np.array_equal(synthetic_signal(1024), synthetic_signal(1024))
        with pytest.raises(InvalidInputError):
            synthetic_signal(4)

    def test_comparison_csv(self, tmp_path):
        x = synthetic_signal(256)
        result = sparsify(x, 0.02)
        path = write_comparison_csv(x, result, tmp_path / "cmp.csv")
        df = pd.read_csv(path)
        assert list(df.columns) == ['original', 'reconstruction']
        assert len(df) == 256
        assert np.allclose(df['original'].to_numpy(), x)


@pytest.mark.slow
def test_dct_million_point():
    """Round trip and Parseval at length 2^20."""
    x = np.random.default_rng(0).standard_normal(1 << 20)
    c = dct_forward(x)
    assert np.max(np.abs(dct_inverse(c) - x)) <= 1e-10
    assert abs(np.dot(c, c) - np.dot(x, x)) / np.dot(x, x) <= 1e-10
