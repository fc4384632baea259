import os
from functools import lru_cache
from typing import Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import ConfigError

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    max_iter: Optional[int] = Field(None, ge=1, description="Saturation iteration cap; defaults to the ambient dimension")
    workers: int = Field(1, ge=1, description="Processes used by the twistor scan")
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        v = v.upper()
        if v not in LOG_LEVELS:
            raise ValueError(f"unknown log level '{v}'")
        return v


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Read settings from the environment (cached; call get_settings.cache_clear() after changing it)"""
    raw = {
        "max_iter": os.getenv("HYPERNIL_MAX_ITER") or None,
        "workers": os.getenv("HYPERNIL_WORKERS", "1"),
        "log_level": os.getenv("HYPERNIL_LOG_LEVEL", "WARNING"),
    }
    try:
        return Settings(**raw)
    except ValidationError as e:
        raise ConfigError(f"invalid environment settings: {e}") from e
