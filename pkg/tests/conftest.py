import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from galoisframe import corpus  # noqa: E402
from galoisframe.representation import canonical_frame  # noqa: E402


@lru_cache(maxsize=None)
def canon(name: str, proper_only: bool = True):
    return canonical_frame(corpus.get(name), proper_only=proper_only)


@pytest.fixture(params=corpus.CORPUS_NAMES)
def name(request):
    return request.param


@pytest.fixture(params=[True, False], ids=["proper", "all"])
def proper_only(request):
    return request.param


@pytest.fixture
def cf(name, proper_only):
    return canon(name, proper_only)
