import os
from functools import lru_cache
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

ENV_PREFIX = "AGROUP_"


class Settings(BaseModel):
    """Resource caps and defaults shared by the library and the CLI."""

    model_config = ConfigDict(frozen=True)

    assoc_full_bound: int = Field(default=512, ge=1)
    assoc_sample_factor: int = Field(default=10, ge=1)
    subset_cap: int = Field(default=22, ge=1)
    ring_exhaustive_cap: int = Field(default=2**20, ge=1)
    ring_hard_cap: int = Field(default=2**24, ge=1)
    oracle_budget: int = Field(default=10**7, ge=1)
    max_order: int = Field(default=512, ge=1)
    seed: int = 0
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        values = {}
        for name in cls.model_fields:
            raw = os.getenv(f"{ENV_PREFIX}{name.upper()}")
            if raw is not None:
                values[name] = raw
        return cls(**values)


_override: Optional[Settings] = None


@lru_cache(maxsize=1)
def _env_settings() -> Settings:
    return Settings.from_env()


def get_settings() -> Settings:
    return _override if _override is not None else _env_settings()


def override_settings(**updates) -> Settings:
    """Replace the active settings with a copy carrying the non-None updates (CLI flags)."""
    global _override
    _override = get_settings().model_copy(update={k: v for k, v in updates.items() if v is not None})
    return _override


def reset_settings() -> None:
    global _override
    _override = None
    _env_settings.cache_clear()
