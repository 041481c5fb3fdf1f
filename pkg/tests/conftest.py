import functools

import pytest

from ncperm import build_group


@functools.lru_cache(maxsize=None)
def cached_group(label):
    return build_group(label)


@pytest.fixture(scope="session")
def group():
    return cached_group
