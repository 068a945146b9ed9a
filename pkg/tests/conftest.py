"""Shared fixtures: cached parameter derivations and a deterministic rng."""

from functools import lru_cache

import numpy as np
import pytest

from f0sip.protocol import derive_params


@lru_cache(maxsize=None)
def cached_params(m: int, seed: int):
    return derive_params(m, seed)


@pytest.fixture
def rng():
    return np.random.default_rng(0xF0)
