"""Bergman kernels and Poincare series on Hermitian symmetric domains."""
__version__ = "0.1.0"
