from pathlib import Path
import sys

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dgql import config  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture
def restore_config():
    saved = (
        config.DEFAULT_TRUNCATION,
        config.DEFAULT_DEGREES,
        config.DEFAULT_CY_PARAMETER,
        config.FINITENESS_BOUND,
    )
    yield
    (
        config.DEFAULT_TRUNCATION,
        config.DEFAULT_DEGREES,
        config.DEFAULT_CY_PARAMETER,
        config.FINITENESS_BOUND,
    ) = saved


@pytest.fixture
def data_dir() -> Path:
    return DATA
