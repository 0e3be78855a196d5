from __future__ import annotations

import pytest

from spectre_tiling.analysis import TileIndex
from spectre_tiling.inflation import generate


@pytest.fixture(scope="session")
def patches():
    cache = {}

    def get(seed: str, step: int):
        key = (seed, step)
        if key not in cache:
            cache[key] = generate(seed, step)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def indexes(patches):
    cache = {}

    def get(seed: str, step: int):
        key = (seed, step)
        if key not in cache:
            cache[key] = TileIndex(patches(seed, step))
        return cache[key]

    return get
