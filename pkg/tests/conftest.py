import pytest

from periodic_sums import catalog as cat


@pytest.fixture(scope="session")
def entries():
    return {e.id: e for e in cat.all_entries()}
