import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def karate_path() -> Path:
    return DATA_DIR / "karate.edges"
