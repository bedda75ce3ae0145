import pytest

from pararp.representation import build_generators

_CACHE = {}


def rep_for(n, L):
    key = (n, L)
    if key not in _CACHE:
        _CACHE[key] = build_generators(n, L)
    return _CACHE[key]


@pytest.fixture
def rep():
    return rep_for
