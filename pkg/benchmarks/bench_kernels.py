"""Compare the compiled and numpy kernels.

    python benchmarks/bench_kernels.py [--repeat 20]

Prints per-call timings for each kernel on representative inputs, the
largest disagreement between the two backends, and an end-to-end figure 1
scan under each backend (run in a subprocess with CIRCLE_UNC_PURE set).
"""
import argparse
import math
import os
import subprocess
import sys
import timeit

import numpy as np

from circle_unc import _pykernels
from circle_unc.observables import CENTER_GRID
from circle_unc.states import cat_state, squeezed_coherent_state

try:
    from circle_unc import _ckernels
except ImportError:
    _ckernels = None


def cases():
    for psi in (cat_state(1.0, -1.0), squeezed_coherent_state(1.0, 0.05)):
        cp = np.ascontiguousarray(psi.coeffs)
        phis = -math.pi + 2 * math.pi * np.arange(CENTER_GRID) / CENTER_GRID
        n = len(cp)
        yield (f"synthesize      n={n:3d} pts={CENTER_GRID}", "synthesize", (cp, psi.m_min, phis))
        yield (f"phi_moment_sums n={n:3d}", "phi_moment_sums", (cp, psi.m_min))
        yield (f"sawtooth_project n={n:3d} out={3 * n}", "sawtooth_project",
               (cp, psi.m_min, psi.m_min - n, 3 * n))


def end_to_end(pure):
    env = dict(os.environ, CIRCLE_UNC_PURE="1" if pure else "0", CIRCLE_UNC_THREADS="1")
    code = ("import time; from circle_unc.experiments import figure1; "
            "t = time.perf_counter(); figure1(); print(time.perf_counter() - t)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only numpy timings are available")
    print(f"{'kernel':40s} {'numpy [us]':>12s} {'cython [us]':>12s} {'speedup':>8s} {'max diff':>10s}")
    for name, fn, argv in cases():
        t_py = min(timeit.repeat(lambda: getattr(_pykernels, fn)(*argv), number=1, repeat=args.repeat))
        if _ckernels is None:
            print(f"{name:40s} {t_py * 1e6:12.1f}")
            continue
        t_c = min(timeit.repeat(lambda: getattr(_ckernels, fn)(*argv), number=1, repeat=args.repeat))
        diff = np.max(np.abs(np.asarray(getattr(_pykernels, fn)(*argv)) - np.asarray(getattr(_ckernels, fn)(*argv))))
        print(f"{name:40s} {t_py * 1e6:12.1f} {t_c * 1e6:12.1f} {t_py / t_c:8.1f} {diff:10.2e}")
    print()
    t_np = end_to_end(pure=True)
    print(f"figure 1 scan (601 rows), numpy kernels : {t_np:.2f} s")
    if _ckernels is not None:
        t_cy = end_to_end(pure=False)
        print(f"figure 1 scan (601 rows), cython kernels: {t_cy:.2f} s  ({t_np / t_cy:.1f}x)")


if __name__ == "__main__":
    main()
