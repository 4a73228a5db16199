# Config package initialization
import os
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, field_validator

# Load environment variables
load_dotenv()

DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_OUTPUT_FORMAT = "table"
DEFAULT_MAX_GENERATORS = 64


class Settings(BaseModel):
    """Runtime settings, read once from the environment."""

    model_config = ConfigDict(frozen=True)

    log_level: str = DEFAULT_LOG_LEVEL
    log_file: Optional[str] = None
    output_format: str = DEFAULT_OUTPUT_FORMAT
    check_quotients: bool = True
    max_generators: int = DEFAULT_MAX_GENERATORS

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()

    @field_validator("output_format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        value = value.lower()
        if value not in ("table", "json"):
            raise ValueError(f"Unsupported output format: {value}")
        return value

    @field_validator("max_generators")
    @classmethod
    def _generator_bound(cls, value: int) -> int:
        if not 1 <= value <= DEFAULT_MAX_GENERATORS:
            raise ValueError(f"max_generators must lie in 1..{DEFAULT_MAX_GENERATORS}")
        return value


def _env_flag(name: str, default: str) -> bool:
    return os.environ.get(name, default).lower() == "true"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get the configured settings."""
    return Settings(
        log_level=os.environ.get("FROLICHER_LOG_LEVEL", DEFAULT_LOG_LEVEL),
        log_file=os.environ.get("FROLICHER_LOG_FILE") or None,
        output_format=os.environ.get("FROLICHER_OUTPUT_FORMAT", DEFAULT_OUTPUT_FORMAT),
        check_quotients=_env_flag("FROLICHER_CHECK_QUOTIENTS", "true"),
        max_generators=int(
            os.environ.get("FROLICHER_MAX_GENERATORS", str(DEFAULT_MAX_GENERATORS))
        ),
    )
