import json
import os
from pathlib import Path

import pytest

SOURCE_DIR = Path(os.environ.get("HOPFLAB_SOURCE_DIR", Path(__file__).resolve().parents[2]))
FIXTURES = SOURCE_DIR / "tests" / "fixtures"
SCHEMAS = SOURCE_DIR / "schemas"


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / name


@pytest.fixture
def load_schema():
    return lambda name: json.loads((SCHEMAS / f"{name}.schema.json").read_text())
