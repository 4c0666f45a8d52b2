"""Time the compiled and pure-Python RREF kernels on the same inputs.

    python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import timeit
from fractions import Fraction

from kslie import _rref_py
from kslie.construct import sl_n
from kslie.derivh2 import _derivation_rows
from kslie.prng import SplitMix64

try:
    from kslie import _rref_c
except ImportError:
    _rref_c = None


def random_rows(rng, nrows, ncols, bound=9):
    return [[Fraction(rng.randint(-bound, bound), rng.randint(1, 4)) for _ in range(ncols)] for _ in range(nrows)]


def workloads():
    rng = SplitMix64(7)
    yield "random 20x20", random_rows(rng, 20, 20), 20
    yield "random 40x60", random_rows(rng, 40, 60), 60
    for n in (3, 4):
        g = sl_n(n)
        rows = _derivation_rows(g)
        yield f"Der(sl({n})) system {len(rows)}x{g.dim ** 2}", rows, g.dim ** 2


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _rref_c is None:
        print("compiled kernel not built; run pip install -e . --no-build-isolation")
        return
    print(f"{'workload':<32} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, rows, ncols in workloads():
        assert _rref_py.rref_rows(rows, ncols) == _rref_c.rref_rows(rows, ncols)
        tp = min(timeit.repeat(lambda: _rref_py.rref_rows(rows, ncols), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: _rref_c.rref_rows(rows, ncols), number=1, repeat=args.repeat))
        print(f"{name:<32} {tp * 1e3:>10.2f} {tc * 1e3:>10.2f} {tp / tc:>7.2f}x")


if __name__ == "__main__":
    main()
