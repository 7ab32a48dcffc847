"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Kernel rows call both backends directly on the same inputs. The end-to-end
rows run a truthfulness search in a subprocess per backend, since the
backend is chosen once at import (``TWOLEVEL_PURE=1`` forces pure Python).
"""

import argparse
import os
import subprocess
import sys
import timeit

from twolevel import _kernels_py
from twolevel.analysis import Mcg64

try:
    from twolevel import _kernels as _compiled
except ImportError:
    _compiled = None

END_TO_END = """
import time
from twolevel import MECHANISM1, kernels
from twolevel.analysis import check_truthful, gen_random
start = time.perf_counter()
for s in range(40):
    check_truthful(MECHANISM1, gen_random(s, 1 + s % 4, 6, 1, "single-item", 10))
print(kernels.BACKEND, time.perf_counter() - start)
"""


def cases():
    rng = Mcg64(7)
    fracs = [rng.rational(100) for _ in range(12)]
    columns = [[rng.below(10**6) for _ in range(1 + rng.below(8))] for _ in range(4)]

    def scores(k, m):
        return [[0] + [rng.below(10**6) for _ in range(1, 1 << m)] for _ in range(k)]

    s_vcg = scores(3, 8)
    s_dp = scores(8, 8)
    return [
        ("wtp, 12 Fractions", lambda K: K.wtp(fracs), 2000),
        ("single_item, 4 groups", lambda K: K.single_item(columns), 2000),
        ("best_assignment k=3 m=8", lambda K: K.best_assignment(s_vcg, 3, 8, -1), 2),
        ("subset_dp k=8 m=8", lambda K: K.subset_dp(s_dp, 8, 8), 2),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _compiled is None:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'kernel':28} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, fn, number in cases():
        assert fn(_kernels_py) == fn(_compiled), name
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=number, repeat=args.repeat)) / number
        cy = min(timeit.repeat(lambda: fn(_compiled), number=number, repeat=args.repeat)) / number
        print(f"{name:28} {py * 1e3:10.4f} {cy * 1e3:10.4f} {py / cy:7.1f}x")
    for pure in ("1", "0"):
        env = dict(os.environ, TWOLEVEL_PURE=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        print(f"end-to-end truthfulness search, 40 instances, {out[0]}: {float(out[1]):.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
