import pytest

from groupdet import catalog
from groupdet.chartab import character_table


@pytest.fixture(scope="session")
def suite():
    """The acceptance corpus, built once."""
    return catalog.suite_groups()


@pytest.fixture(scope="session")
def suite_tables(suite):
    """Character tables for the whole corpus (cached on the groups)."""
    return {G.name: character_table(G) for G in suite}
