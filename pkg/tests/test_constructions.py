"""Tests for frequency sets, Psi, Q, Phi and the Gram blocks."""
import numpy as np
import pytest
from sympy import primerange

from cs_audit.constructions import (
    build_frames,
    closed_form_phi,
    expected_symmetric_size,
    gram_blocks,
    layout_residual,
    make_random_omega,
    make_symmetric_omega,
    partial_fourier,
    rank_chain,
    realifier_q,
    realify,
    symmetry_residual,
)
from cs_audit.core import Precision
from cs_audit.errors import InvalidInputError
from cs_audit.robustness import exact_rank_cyclotomic, numeric_rank

TOL = 1e-12


class TestOmega:
    """Test cases for frequency set construction."""

    def test_small_sets(self):
        assert make_symmetric_omega(3).indices == (0, 1, 2)
        assert make_symmetric_omega(5).indices == (0, 1, 4)
        assert make_symmetric_omega(7).indices == (0, 1, 3, 4, 6)

    def test_size_parity_all_primes(self):
        for p in primerange(3, 200):
            k = (p - 1) // 2
            omega = make_symmetric_omega(int(p), policy='odd_half')
            assert omega.size == (k + 1 if k % 2 == 0 else k + 2)
            assert omega.size == expected_symmetric_size(int(p))
            assert omega.is_symmetric()

    @pytest.mark.parametrize("modulus", [1, 2, 4, 9, 15])
    def test_invalid_modulus(self, modulus):
        with pytest.raises(InvalidInputError):
            make_symmetric_omega(modulus)

    def test_unknown_policy(self):
        with pytest.raises(InvalidInputError):
            make_symmetric_omega(7, policy='nope')

    def test_full_policy(self):
        assert make_symmetric_omega(7, policy='full').size == 7

    def test_random_omega_reproducible(self):
        a = make_random_omega(31, 8, seed=42)
        b = make_random_omega(31, 8, seed=42)
        assert a == b
        assert a.size == 8

    def test_random_omega_bounds(self):
        with pytest.raises(InvalidInputError):
            make_random_omega(7, 8, seed=1)
        with pytest.raises(InvalidInputError):
            make_random_omega(7, 0, seed=1)


class TestFrames:
    """Test cases for Psi, Q and Phi."""

    def test_shapes(self, frames7):
        omega, psi, q, phi = frames7
        assert psi.shape == (5, 7)
        assert q.shape == (7, 7)
        assert phi.shape == (5, 7)
        assert phi.is_real and not psi.is_real

    def test_identities_up_to_101(self):
        for p in primerange(3, 102):
            p = int(p)
            omega = make_symmetric_omega(p)
            psi, q, phi = build_frames(p, omega)
            assert q.matmul(q.conj_transpose()).identity_residual() <= TOL
            assert psi.matmul(psi.conj_transpose()).identity_residual() <= TOL
            assert psi.matmul(q.conj_transpose()).max_imag() <= TOL
            assert layout_residual(phi, omega) <= TOL
            assert symmetry_residual(phi, omega) <= TOL

    def test_closed_form_first_column(self, frames5):
        omega, _, _, phi = frames5
        expected = np.full(3, np.sqrt(2 / 5) * np.sqrt(0.5))
        np.testing.assert_allclose(phi.to_numpy()[:, 0], expected, atol=TOL)
        np.testing.assert_allclose(closed_form_phi(omega), phi.to_numpy(), atol=TOL)

    def test_psi_entries(self, frames5):
        omega, psi, _, _ = frames5
        w = np.exp(2j * np.pi / 5)
        assert psi.data[1, 2] == pytest.approx(w ** 2 / np.sqrt(5))
        assert psi.data[2, 3] == pytest.approx(w ** 12 / np.sqrt(5))

    def test_realify_shape_mismatch(self, frames5):
        _, psi, _, _ = frames5
        with pytest.raises(InvalidInputError):
            realify(psi, realifier_q(7))

    def test_exact_forms_attached(self, frames7):
        _, psi, _, phi = frames7
        assert psi.exact_form is not None and psi.exact_form.shape == psi.shape
        assert phi.exact_form is not None and phi.exact_form.shape == phi.shape

    def test_extended_precision(self):
        omega = make_symmetric_omega(7)
        psi, q, phi = build_frames(7, omega, Precision.EXTENDED)
        assert phi.is_extended and phi.is_real
        assert psi.matmul(psi.conj_transpose()).identity_residual() < 1e-60
        assert q.matmul(q.conj_transpose()).identity_residual() < 1e-60
        assert layout_residual(phi, omega) < 1e-14

    @pytest.mark.parametrize("modulus", [5, 7, 11])
    def test_extended_adjoint_keeps_precision(self, modulus):
        """The adjoint and the real part are taken at the working precision, not at double."""
        omega = make_symmetric_omega(modulus)
        psi = partial_fourier(modulus, omega, Precision.EXTENDED)
        q = realifier_q(modulus, Precision.EXTENDED)
        assert psi.matmul(psi.conj_transpose()).identity_residual() < 1e-60
        assert q.conj_transpose().matmul(q).identity_residual() < 1e-60
        product = psi.matmul(q.conj_transpose())
        assert product.max_imag() < 1e-60
        phi = product.real_part()
        assert phi.matmul(phi.conj_transpose()).identity_residual() < 1e-60


class TestGram:
    """Test cases for the Gram blocks and the rank chain."""

    def test_block_diagonal(self):
        for p in primerange(3, 102):
            p = int(p)
            omega = make_symmetric_omega(p)
            _, _, phi = build_frames(p, omega)
            assert gram_blocks(phi, omega.half_modulus).offdiag_max <= TOL

    def test_rank_chain(self):
        for p in primerange(3, 60):
            p = int(p)
            omega = make_symmetric_omega(p)
            psi, _, phi = build_frames(p, omega)
            chain = rank_chain(phi, omega.half_modulus)
            assert chain.rank_phi == omega.size == numeric_rank(psi)
            assert chain.rank_m == chain.block_sum

    def test_gram_requires_real_frame(self, frames5):
        omega, psi, _, _ = frames5
        with pytest.raises(InvalidInputError):
            gram_blocks(psi, omega.half_modulus)

    @pytest.mark.parametrize("modulus", [5, 7, 11, 13])
    def test_exact_rank_matches_size(self, modulus):
        omega = make_symmetric_omega(modulus)
        psi, _, phi = build_frames(modulus, omega)
        assert exact_rank_cyclotomic(psi.exact_form) == omega.size
        assert exact_rank_cyclotomic(phi.exact_form) == omega.size

    def test_partial_fourier_exact_form_columns(self):
        omega = make_symmetric_omega(11)
        psi = partial_fourier(11, omega)
        sub = psi.columns([0, 3, 5])
        assert sub.exact_form.shape == (omega.size, 3)
