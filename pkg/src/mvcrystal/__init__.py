"""Exact combinatorics of path crystals, MV-cycle labels and the Satake basis, with a small
polynomial-ideal engine for certifying intersection multiplicities."""

__version__ = "0.1.0"
