import logging
import re
from pathlib import Path

from gradus.config import settings
from gradus.external.cache.schemas import CacheData

logger = logging.getLogger(__name__)

KEY_PATTERN = re.compile(r"^[0-9a-f]{8,128}$")


class CacheService:

    def __init__(self, directory: Path | str | None = None):
        """
        Initializing the service with the directory holding one JSON file per key.
        """
        self.directory = Path(directory) if directory is not None else settings.CACHE

    def path(self, key: str) -> Path:
        if not KEY_PATTERN.match(key):
            raise ValueError(f"cache keys are hex digests, got {key!r}")
        return self.directory / f"{key}.json"

    def set_key(self, cache_data: CacheData) -> None:
        """
        Stores the value under its key, replacing an older entry.

        Args:
            cache_data (CacheData): The key and the serialized value.
        """

        self.directory.mkdir(parents=True, exist_ok=True)
        target = self.path(cache_data.key)
        value = cache_data.value
        data = value.encode() if isinstance(value, str) else value

        temporary = target.with_suffix(".tmp")
        temporary.write_bytes(data)
        temporary.replace(target)
        logger.debug("cached %s", cache_data.key)

    def get_by_key(self, key: str) -> str | None:
        """
        Retrieves a value using the specified key.

        Args:
            key (str): The key to retrieve the value for.

        Returns:
            str | None: The stored value, or None if not found.
        """

        target = self.path(key)
        if not target.is_file():
            return None
        return target.read_text()

    def delete_by_key(self, key: str) -> None:
        self.path(key).unlink(missing_ok=True)

    def clear_data(self) -> None:
        if not self.directory.is_dir():
            return
        for entry in self.directory.glob("*.json"):
            entry.unlink()
