import logging
from enum import Enum
from pathlib import Path

from dotenv import find_dotenv, load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

from gradus import __version__

load_dotenv(find_dotenv(".env"))


class Environment(str, Enum):
    """Run environments of the verification engine"""

    LOCAL = "LOCAL"
    TESTING = "TESTING"
    PRODUCTION = "PRODUCTION"

    @property
    def is_debug(self) -> bool:
        """Checks whether the environment logs at debug level."""
        return self in (self.LOCAL, self.TESTING)

    @property
    def is_testing(self) -> bool:
        """Checks whether the environment is the test environment."""
        return self == self.TESTING


class Config(BaseSettings):
    """Main settings of the verification engine"""

    ENVIRONMENT: Environment = Environment.PRODUCTION
    LOG_LEVEL: str = "INFO"

    TOOL_VERSION: str = __version__
    SCHEMA_VERSION: int = 1

    FIELD: str = "fp:65537"
    CACHE: Path = Path(".gradus-cache")
    JOBS: int = 1

    SL_CANDIDATE_LIMIT: int = 200
    RANDOM_QQ_BOUND: int = 10
    EXPLICIT_COEFFICIENT_BOUND: int = 5

    # full rank modulo this prime certifies full rank over QQ
    QQ_MODULAR_SHORTCUT: bool = True
    SHORTCUT_PRIME: int = 65537

    model_config = SettingsConfigDict(env_prefix="GRADUS_", case_sensitive=True)


settings = Config()


def configure_logging(level: str | None = None) -> None:
    """
    Configures the root logger once for command-line runs.

    Args:
        level (str | None): Explicit level name; defaults to the configured one.
    """

    if level is None:
        level = "DEBUG" if settings.ENVIRONMENT.is_debug else settings.LOG_LEVEL

    logging.basicConfig(
        level=level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
