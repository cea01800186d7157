"""
Runtime settings and logging setup
"""
import logging
import sys
from functools import lru_cache
from typing import List, Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class Settings(BaseSettings):
    """Settings read from GAPIDX_* environment variables"""

    model_config = SettingsConfigDict(env_prefix="GAPIDX_", extra="ignore")

    log_level: str = Field(default="INFO", description="Root logging level")
    log_file: Optional[str] = Field(default=None, description="Optional log file next to stderr output")
    small_tree_cutoff: int = Field(
        default=64, ge=2,
        description="Induced trees with at most this many leaves are answered by enumeration"
    )
    bench_workers: int = Field(default=4, ge=1, description="Worker threads used by the bench pipeline")
    quadratic_max_n: int = Field(default=1024, ge=1, description="Longest text the quadratic index accepts")
    default_kind: Literal["count", "report", "zero-beta", "baseline", "quadratic"] = Field(default="count")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings instance"""
    return Settings()


def configure_logging(settings: Optional[Settings] = None) -> None:
    """Console logging on stderr plus an optional file handler"""
    settings = settings or get_settings()
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file, mode='a'))
    logging.basicConfig(
        level=settings.log_level.upper(),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
