from __future__ import annotations

import os
import random
import subprocess
import sys

import pytest

from spectre_tiling import _kernels_py, kernels
from spectre_tiling.lattice import Vec4, ZERO
from spectre_tiling.shape import PlacedMonotile, candidate_pairs, scaled_polygon


def _random_polys(n, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        off = Vec4(*(rng.randint(-4, 4) for _ in range(4)))
        out.append(scaled_polygon(PlacedMonotile(rng.randint(1, 12), off)))
    return out


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_fallback_forced_by_env():
    env = dict(os.environ, SPECTRE_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from spectre_tiling import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_pure_python_examples():
    m = scaled_polygon(PlacedMonotile(1, ZERO))
    assert _kernels_py.polygons_overlap(m, m)
    assert not _kernels_py.polygons_overlap(m, scaled_polygon(PlacedMonotile(1, Vec4(40, 0, 0, 0))))


def test_backends_agree():
    compiled = pytest.importorskip("spectre_tiling._kernels")
    polys = _random_polys(300, 3)
    pairs = [(i, j) for i in range(len(polys)) for j in range(i + 1, len(polys)) if (i * 7 + j) % 5 == 0]
    assert compiled.overlapping_pairs(polys, pairs) == _kernels_py.overlapping_pairs(polys, pairs)
    for i, j in pairs[:2000]:
        assert compiled.polygons_overlap(polys[i], polys[j]) == _kernels_py.polygons_overlap(polys[i], polys[j])


def test_backends_agree_far_coordinates():
    # large anchors exercise the overflow guard of the compiled kernel
    compiled = pytest.importorskip("spectre_tiling._kernels")
    big = Vec4(10**6, -(10**6), 3 * 10**5, 7)
    a = scaled_polygon(PlacedMonotile(2, big))
    b = scaled_polygon(PlacedMonotile(2, big + Vec4(1, 1, 1, -2)))
    c = scaled_polygon(PlacedMonotile(5, big + Vec4(0, 1, 0, 0)))
    for p, q in ((a, a), (a, b), (a, c)):
        assert compiled.polygons_overlap(p, q) == _kernels_py.polygons_overlap(p, q)


def test_generated_patch_backends_agree(patches):
    compiled = pytest.importorskip("spectre_tiling._kernels")
    tiles = patches("O1", 1).monotiles
    polys = [scaled_polygon(t) for t in tiles]
    pairs = candidate_pairs(tiles)
    assert compiled.overlapping_pairs(polys, pairs) == _kernels_py.overlapping_pairs(polys, pairs) == []
