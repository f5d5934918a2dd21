import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hydrogrip import Finger, GripperParams  # noqa: E402

DEG = math.pi / 180


@pytest.fixture(scope="session")
def params():
    return GripperParams()


@pytest.fixture(scope="session")
def fem(params):
    return Finger.from_params(params, "fem")


@pytest.fixture(scope="session")
def uniform(params):
    return Finger.from_params(params, "uniform")
