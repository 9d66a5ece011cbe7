import pytest

from hbcalc.cli import load_catalog

from support import FIXTURES


@pytest.fixture(scope="session")
def demo_catalog():
    return load_catalog(str(FIXTURES / "catalog_demo.json"))


@pytest.fixture(scope="session")
def fixture_catalog():
    return load_catalog(str(FIXTURES / "catalog_fixture.json"))


@pytest.fixture(scope="session")
def table_catalog():
    return load_catalog(str(FIXTURES / "catalog_table.json"))
