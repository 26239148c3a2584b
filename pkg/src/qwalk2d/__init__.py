"""Exact simulation and weak-limit analysis of two-dimensional generalized Grover walks."""
__version__ = "0.1.0"
