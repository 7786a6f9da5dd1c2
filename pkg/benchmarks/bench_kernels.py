"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json]

The kernel timings import both backends side by side.  The end-to-end rows
run the CLI in subprocesses, with and without ``QORBITAL_PURE=1``.
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time
import timeit

from qorbital import _kernels_py
from qorbital.cyclotomic import field
from qorbital.dsl import build

try:
    from qorbital import _ckernels
except ImportError:
    _ckernels = None


def _poly_case(n, rng):
    F = field(n)
    a = [rng.randint(-50, 50) for _ in range(F.phi)]
    b = [rng.randint(-50, 50) for _ in range(F.phi)]
    return (a, b, F.table, F.phi)


def _pair_case(expr):
    u = build(expr).u
    ent, nz = u.product_table()
    return (ent, nz, u.n)


def kernel_cases():
    rng = random.Random(0)
    return [
        ("poly_mulmod", "Q(zeta_8)", _poly_case(8, rng), 20000),
        ("poly_mulmod", "Q(zeta_120)", _poly_case(120, rng), 500),
        ("pair_classes", "kp{u0,w,x}", _pair_case("kp{u0,w,x}"), 20),
        ("pair_classes", "kp{u0,w,x,y,z,one}", _pair_case("kp{u0,w,x,y,z,one}"), 3),
    ]


def time_kernel(mod, name, args, number, repeat):
    fn = getattr(mod, name)
    best = min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat))
    return best / number


def time_cli(argv, pure, repeat):
    env = dict(os.environ)
    if pure:
        env["QORBITAL_PURE"] = "1"
    else:
        env.pop("QORBITAL_PURE", None)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        subprocess.run([sys.executable, "-m", "qorbital", *argv], env=env, check=True,
                       stdout=subprocess.DEVNULL)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    rows = []
    for name, label, case, number in kernel_cases():
        py = time_kernel(_kernels_py, name, case, number, args.repeat)
        cy = time_kernel(_ckernels, name, case, number, args.repeat) if _ckernels else None
        if _ckernels is not None:
            assert getattr(_ckernels, name)(*case) == getattr(_kernels_py, name)(*case)
        rows.append({"kernel": name, "case": label, "python_s": py, "cython_s": cy})
    for cmd in (["orbitals", "kp{u0,w,x,y,z,one}"], ["graphs", "dual(A4){(123),(12)(34)}"]):
        py = time_cli(cmd, True, max(1, args.repeat // 2))
        cy = time_cli(cmd, False, max(1, args.repeat // 2)) if _ckernels else None
        rows.append({"kernel": "cli " + cmd[0], "case": cmd[1], "python_s": py, "cython_s": cy})

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'kernel':<14} {'case':<26} {'python':>12} {'cython':>12} {'speedup':>8}")
    for r in rows:
        cy = r["cython_s"]
        speed = f"{r['python_s'] / cy:7.1f}x" if cy else "     n/a"
        cy_s = f"{cy * 1e3:10.3f}ms" if cy else "         n/a"
        print(f"{r['kernel']:<14} {r['case']:<26} {r['python_s'] * 1e3:10.3f}ms {cy_s} {speed}")


if __name__ == "__main__":
    main()
