from pathlib import Path

import pytest

from lexmark.xmltree import parse_file

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_root(name: str):
    return parse_file(FIXTURES / name).root


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
