"""Kernel selection: compiled extension when importable, else pure Python.

Set ``QORBITAL_PURE=1`` to force the fallback.
"""

import os

from qorbital import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("QORBITAL_PURE", "") not in ("1", "true", "yes"):
    try:
        from qorbital import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py

poly_mulmod = _impl.poly_mulmod
reduce_exponents = _impl.reduce_exponents
pair_classes = _impl.pair_classes

__all__ = ["BACKEND", "poly_mulmod", "reduce_exponents", "pair_classes"]
