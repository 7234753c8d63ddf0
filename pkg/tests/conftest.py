import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bundlecalc.registry import Catalog, default_registry


@pytest.fixture(scope="session")
def catalog() -> Catalog:
    return default_registry()
