"""Exact orbital computations for quantum permutation groups."""

from qorbital._accel import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
