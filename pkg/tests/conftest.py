import math
from pathlib import Path

import pytest

from henoncrypt import HenonParams, KeyMaterial, read_wav

FIXTURE_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def speech_path() -> Path:
    return FIXTURE_DIR / "speech_8k.wav"


@pytest.fixture(scope="session")
def speech_buffer(speech_path):
    return read_wav(speech_path)


@pytest.fixture()
def default_key() -> KeyMaterial:
    henon = HenonParams(alpha=1.4, beta=0.3, x0=0.01, y0=0.003)
    return KeyMaterial(henon=henon, theta=1000.0, phi=math.pi / 4, r=4)
