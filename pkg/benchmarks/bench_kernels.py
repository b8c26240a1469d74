"""Compare the compiled and pure-Python box kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends get identical inputs; results are checked equal before timing
is reported.
"""

from __future__ import annotations

import argparse
import timeit

from toric_cox import _kernels_py, kernels

try:
    from toric_cox import _kernels as fast
except ImportError:
    fast = None

CASES = {
    # rows of the P2 chart system, a 2-D character box
    "sign_patterns_2d_r60": ("sign", [[1, 0], [0, 1], [-1, -1]], [0, 0, -3], 60),
    # Hirzebruch fan, 2-D box
    "sign_patterns_hirzebruch_r80": ("sign", [[1, 0], [0, 1], [-1, 2], [0, -1]], [0, 0, 2, -3], 80),
    # 3-D simplex polytope points
    "box_points_3d_r25": ("box", [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]], [0, 0, 0, -40], 25),
}


def run(name, kind, M, v, r, mod):
    n = len(M[0])
    lo, hi = [-r] * n, [r] * n
    if kind == "sign":
        return mod.sign_pattern_counts(M, v, lo, hi)
    return mod.box_points(M, v, lo, hi)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"selected backend: {kernels.BACKEND}")
    if fast is None:
        print("compiled extension not built; timing the pure-Python kernels only")
    for name, (kind, M, v, r) in CASES.items():
        t_py = min(timeit.repeat(lambda: run(name, kind, M, v, r, _kernels_py), number=1, repeat=args.repeat))
        line = f"{name:32s} python {t_py * 1e3:9.2f} ms"
        if fast is not None:
            assert run(name, kind, M, v, r, fast) == run(name, kind, M, v, r, _kernels_py)
            t_c = min(timeit.repeat(lambda: run(name, kind, M, v, r, fast), number=1, repeat=args.repeat))
            line += f"   cython {t_c * 1e3:9.2f} ms   speedup {t_py / t_c:6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
