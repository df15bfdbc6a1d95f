import json
from pathlib import Path

import pytest

from idealorder.field_model import load_fixture

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.json"


def fixture_doc(name: str) -> dict:
    with open(fixture_path(name), "r", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def dedekind():
    return load_fixture(fixture_path("dedekind-cubic"))


@pytest.fixture(scope="session")
def degree_ten():
    return load_fixture(fixture_path("degree-ten"))


@pytest.fixture(scope="session")
def quartic():
    return load_fixture(fixture_path("field-3-2"))


@pytest.fixture(scope="session")
def gaussian():
    return load_fixture(fixture_path("gaussian"))


@pytest.fixture(scope="session")
def eisenstein():
    return load_fixture(fixture_path("eisenstein"))


@pytest.fixture(scope="session")
def all_fixtures(dedekind, degree_ten, quartic, gaussian, eisenstein):
    return {
        "dedekind-cubic": dedekind,
        "degree-ten": degree_ten,
        "field-3-2": quartic,
        "gaussian": gaussian,
        "eisenstein": eisenstein,
    }
