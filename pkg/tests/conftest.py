import pytest

from refsev.caporaso import CHTable


@pytest.fixture(scope="session")
def chtable():
    """One shared in-memory recursion table for the whole run; values are
    immutable once computed, so sharing is safe and saves minutes."""
    return CHTable()
