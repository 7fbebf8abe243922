import functools
import random

import pytest

from twistlab.homlat import GenusContext
from twistlab.verify import build_presets


@functools.lru_cache(maxsize=None)
def presets(g: int, kind: str):
    return build_presets(GenusContext(g), kind)


@pytest.fixture
def rng():
    return random.Random(20240611)
