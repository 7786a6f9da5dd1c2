import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qorbital import _accel, _kernels_py
from qorbital.cyclotomic import field

try:
    from qorbital import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_selected():
    assert _accel.BACKEND in ("cython", "python")
    if _ckernels is not None and os.environ.get("QORBITAL_PURE") != "1":
        assert _accel.BACKEND == "cython"


def test_pure_fallback_env():
    code = "import qorbital._accel as a; print(a.BACKEND)"
    env = dict(os.environ, QORBITAL_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
@settings(max_examples=200, deadline=None)
@given(st.sampled_from([3, 5, 8, 12, 15, 20]), st.data())
def test_poly_mulmod_backends_agree(n, data):
    F = field(n)
    vec = st.lists(st.integers(-50, 50), min_size=F.phi, max_size=F.phi)
    a, b = data.draw(vec), data.draw(vec)
    table = [list(r) for r in F.table]
    assert list(_ckernels.poly_mulmod(a, b, table, F.phi)) == list(_kernels_py.poly_mulmod(a, b, table, F.phi))


@needs_ext
@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.data())
def test_pair_classes_backends_agree(n, data):
    k = data.draw(st.integers(1, 4))
    ent = [[data.draw(st.integers(0, k - 1)) for _ in range(n)] for _ in range(n)]
    nz = [[data.draw(st.booleans()) for _ in range(k)] for _ in range(k)]
    r1, raw1 = _ckernels.pair_classes(ent, nz, n)
    r2, raw2 = _kernels_py.pair_classes(ent, nz, n)
    assert list(r1) == list(r2) and raw1 == raw2


def test_pair_classes_small_example():
    # identity 2x2 magic matrix: u_11 = u_22 = 1, off-diagonal 0
    ent = [[0, 1], [1, 0]]
    nz = [[True, False], [False, False]]
    roots, raw = _kernels_py.pair_classes(ent, nz, 2)
    assert raw == 4
    assert len(set(roots)) == 4
