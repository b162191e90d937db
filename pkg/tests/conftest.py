import pytest

from greatroot import special
from greatroot.config import settings


@pytest.fixture(scope="session", autouse=True)
def isolated_cache(tmp_path_factory):
    """Point the Tracy-Widom cache at a per-session directory."""
    original = settings.CACHE_DIR
    settings.CACHE_DIR = tmp_path_factory.mktemp("greatroot-cache")
    special.clear_table_memo()
    yield settings.CACHE_DIR
    settings.CACHE_DIR = original


@pytest.fixture(scope="session")
def tw_tables(isolated_cache):
    return {beta: special.tw_table(beta) for beta in (1, 2)}
