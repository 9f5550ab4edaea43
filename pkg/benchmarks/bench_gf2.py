"""Compare the compiled and pure-Python GF(2) elimination kernels.

    python benchmarks/bench_gf2.py [--repeat N]

Reports rank timings on random square matrices, then the full rank <= 5
sweep run once under each backend (in a subprocess, since the backend is
chosen at import).
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from stein_obstruct import _gf2_py

try:
    from stein_obstruct import _gf2_ext
except ImportError:
    _gf2_ext = None

SWEEP = (
    "import time; from stein_obstruct.acceptance import all_bundles; "
    "from stein_obstruct.homology import homology_dims; from stein_obstruct.thom import build_chain_complex; "
    "t = time.perf_counter(); [homology_dims(build_chain_complex(b, 8)) for b in all_bundles()]; "
    "print(time.perf_counter() - t)"
)


def bench_kernels(repeat: int) -> None:
    print(f"{'n':>6} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    rng = random.Random(0)
    for n in (32, 64, 128, 256, 512):
        rows = [rng.getrandbits(n) for _ in range(n)]
        py = min(timeit.repeat(lambda: _gf2_py.rank(rows, n), number=1, repeat=repeat)) * 1e3
        if _gf2_ext is None:
            print(f"{n:>6} {py:>12.3f} {'n/a':>12} {'':>8}")
            continue
        assert _gf2_ext.rank(rows, n) == _gf2_py.rank(rows, n)
        cy = min(timeit.repeat(lambda: _gf2_ext.rank(rows, n), number=1, repeat=repeat)) * 1e3
        print(f"{n:>6} {py:>12.3f} {cy:>12.3f} {py / cy:>7.1f}x")


def bench_sweep() -> None:
    for label, extra in (("python", {"STEIN_OBSTRUCT_PURE": "1"}), ("default", {})):
        env = dict(os.environ, **extra)
        out = subprocess.run([sys.executable, "-c", SWEEP], env=env, capture_output=True, text=True, check=True)
        print(f"sweep r<=5, top 8, backend={label}: {float(out.stdout) * 1e3:.1f} ms")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    bench_kernels(args.repeat)
    bench_sweep()


if __name__ == "__main__":
    main()
