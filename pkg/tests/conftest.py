import random
import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).parent
KAT_DIR = TESTS / "data" / "kat"
sys.path.insert(0, str(TESTS))


@pytest.fixture
def rng():
    return random.Random(0x5EED)


@pytest.fixture
def kat_dir():
    return KAT_DIR
