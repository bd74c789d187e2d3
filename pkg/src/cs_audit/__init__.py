"""Verification library for sparse recovery guarantees on partial Fourier frames."""

__version__ = "0.1.0"
