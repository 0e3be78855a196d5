"""Compare the compiled and pure-Python overlap kernels on a generated patch.

    python3 benchmarks/bench_kernels.py --seed O1 --steps 2 --repeat 3
"""

from __future__ import annotations

import argparse
import time

from spectre_tiling import _kernels_py
from spectre_tiling.inflation import generate
from spectre_tiling.shape import candidate_pairs, scaled_polygon

try:
    from spectre_tiling import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", default="O1")
    ap.add_argument("--steps", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    patch = generate(args.seed, args.steps, with_trimap=False)
    polys = [scaled_polygon(m) for m in patch.monotiles]
    pairs = candidate_pairs(patch.monotiles)
    print(f"{args.seed} step {args.steps}: {len(polys)} tiles, {len(pairs)} candidate pairs")

    ref = _kernels_py.overlapping_pairs(polys, pairs)
    t_py = best_of(lambda: _kernels_py.overlapping_pairs(polys, pairs), args.repeat)
    print(f"python  {t_py:9.4f} s  overlaps={len(ref)}")
    if _kernels_c is None:
        print("cython  not built")
        return
    got = _kernels_c.overlapping_pairs(polys, pairs)
    assert got == ref, "backends disagree"
    t_c = best_of(lambda: _kernels_c.overlapping_pairs(polys, pairs), args.repeat)
    print(f"cython  {t_c:9.4f} s  overlaps={len(got)}  speedup x{t_py / t_c:.1f}")


if __name__ == "__main__":
    main()
