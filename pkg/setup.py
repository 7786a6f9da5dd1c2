"""Build hook for the optional compiled kernels.

The package works without them; ``qorbital._accel`` falls back to the
pure-Python kernels when ``qorbital._ckernels`` is missing.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("QORBITAL_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            ["src/qorbital/_ckernels.pyx"],
            language_level=3,
            quiet=True,
        )

setup(ext_modules=ext_modules)
