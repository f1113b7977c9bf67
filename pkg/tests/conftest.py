import pytest

from cqexplore.centerdefs import load_registry


@pytest.fixture(scope="session")
def reg():
    return load_registry()
