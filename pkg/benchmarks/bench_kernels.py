"""Compare the compiled recurrence kernels with the numpy fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5]

The first table times the two kernels directly. The second times a full
Lebesgue-constant evaluation in a fresh interpreter per backend, with
``CUBKIT_PURE_PYTHON`` selecting the fallback.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from cubkit import _pykernels
from cubkit.jacobi import recurrence_coefficients

try:
    from cubkit import _ckernels
except ImportError:
    _ckernels = None

END_TO_END = """
import time
from cubkit import _backend
from cubkit.interpolation import interpolation_operator, lebesgue_constant
from cubkit.oracle import WeightSpec
t0 = time.perf_counter()
lebesgue_constant(interpolation_operator(WeightSpec(0.5, 0.5), 8), 128)
print(_backend.BACKEND, time.perf_counter() - t0)
"""


def bench_direct(repeat):
    rng = np.random.default_rng(0)
    print(f"{'kernel':<10}{'n':>5}{'points':>9}{'numpy [ms]':>13}{'cython [ms]':>13}{'speedup':>9}")
    for n, npts in [(8, 100), (8, 10000), (40, 100), (40, 10000), (200, 1000)]:
        A, B, C = recurrence_coefficients(n, (0.5, -0.5))
        s, t = rng.uniform(-1, 1, (2, npts))
        for name, args in [("table", (A, B, C, t)), ("divdiff", (A, B, C, s, t))]:
            py = getattr(_pykernels, "three_term_" + name)
            tp = min(timeit.repeat(lambda: py(*args), number=5, repeat=repeat)) / 5
            row = f"{name:<10}{n:>5}{npts:>9}{tp * 1e3:>13.3f}"
            if _ckernels is not None:
                cy = getattr(_ckernels, "three_term_" + name)
                tc = min(timeit.repeat(lambda: cy(*args), number=5, repeat=repeat)) / 5
                row += f"{tc * 1e3:>13.3f}{tp / tc:>9.1f}"
            print(row)


def bench_end_to_end():
    print("\nLebesgue constant, (1/2,1/2), m=8, 128x128 grid")
    for flag in ("1", "0"):
        env = dict(os.environ, CUBKIT_PURE_PYTHON=flag)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"  {backend:<8}{float(secs):8.3f} s")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    bench_direct(args.repeat)
    bench_end_to_end()


if __name__ == "__main__":
    main()
