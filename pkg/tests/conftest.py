import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT))

from data_loader import load_corpus  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive sweeps over every state or many matrices")


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def entries(corpus):
    return {entry.name: entry for entry in corpus}


@pytest.fixture(scope="session")
def diagrams(entries):
    """Bundled diagrams by name: kink, 3_1, 4_1, granny, square, hopf, r2_unlink, t24, ..."""
    return {name: entry.diagram for name, entry in entries.items()}
