import pytest

from knotcalc.table import load_table


@pytest.fixture(scope="session")
def table():
    return load_table()


@pytest.fixture(scope="session")
def table_diagrams(table):
    return {e.name: e.diagram() for e in table}
