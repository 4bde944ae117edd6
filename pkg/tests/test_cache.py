import pytest

from gradus.external.cache.schemas import CacheData
from gradus.external.cache.services import CacheService

KEY = "0123456789abcdef" * 4


@pytest.fixture
def cache(tmp_path):
    return CacheService(tmp_path / "cache")


def test_set_and_get(cache):
    cache.set_key(CacheData(key=KEY, value='{"verdict": "FULL"}'))

    assert cache.get_by_key(KEY) == '{"verdict": "FULL"}'


def test_bytes_values(cache):
    cache.set_key(CacheData(key=KEY, value=b"payload"))

    assert cache.get_by_key(KEY) == "payload"


def test_overwrite(cache):
    cache.set_key(CacheData(key=KEY, value="old"))
    cache.set_key(CacheData(key=KEY, value="new"))

    assert cache.get_by_key(KEY) == "new"
    assert not list(cache.directory.glob("*.tmp"))


def test_missing_key(cache):
    assert cache.get_by_key(KEY) is None


def test_delete(cache):
    cache.set_key(CacheData(key=KEY, value="value"))
    cache.delete_by_key(KEY)
    cache.delete_by_key(KEY)

    assert cache.get_by_key(KEY) is None


def test_clear(cache):
    other = "f" * 64
    cache.set_key(CacheData(key=KEY, value="one"))
    cache.set_key(CacheData(key=other, value="two"))

    cache.clear_data()

    assert cache.get_by_key(KEY) is None
    assert cache.get_by_key(other) is None


def test_clear_without_directory(cache):
    cache.clear_data()

    assert not cache.directory.exists()


@pytest.mark.parametrize("key", ["../escape", "ABCDEF0123", "short", ""])
def test_rejects_keys_that_are_not_digests(cache, key):
    with pytest.raises(ValueError):
        cache.get_by_key(key)


def test_default_directory_comes_from_settings(isolated_cache):
    assert CacheService().directory == isolated_cache
