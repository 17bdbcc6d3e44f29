#!/usr/bin/env python3
"""
Runtime configuration.

Values come from the environment (the MCP client config generated by
generate_config.py passes them through ``env``) and fall back to defaults.
"""

import logging
import os
from functools import lru_cache

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)


class AnalysisSettings(BaseModel):
    """Bounds and defaults used by the analyses."""

    model_config = {"frozen": True}

    max_box_size: int = Field(default=10**7, ge=1)
    laufer_iteration_cap: int = Field(default=10**6, ge=1)
    search_star_max_d: int = Field(default=64, ge=1)
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "AnalysisSettings":
        """Build settings from RESGRAPH_* and LOG_LEVEL environment variables."""
        values: dict[str, object] = {}
        env_map = {
            "max_box_size": "RESGRAPH_MAX_BOX",
            "laufer_iteration_cap": "RESGRAPH_LAUFER_CAP",
            "search_star_max_d": "RESGRAPH_SEARCH_MAX_D",
        }
        for field, var in env_map.items():
            raw = os.environ.get(var)
            if raw is not None:
                values[field] = int(raw)
        if "LOG_LEVEL" in os.environ:
            values["log_level"] = os.environ["LOG_LEVEL"].upper()
        settings = cls(**values)
        logger.debug(f"Loaded settings: {settings.model_dump()}")
        return settings


@lru_cache(maxsize=1)
def get_settings() -> AnalysisSettings:
    return AnalysisSettings.from_env()
