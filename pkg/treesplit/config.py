"""
Centralized Configuration for treesplit
Reads from environment variables and .env file
"""

from pydantic_settings import BaseSettings
import logging


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    # Logging
    log_level: str = "INFO"

    # Baseline sampler give-up threshold when --max-attempts is omitted
    default_max_attempts: int = 1000

    # Performance
    bench_workers: int = 4

    # Benchmark result store
    store_dir: str = ".treesplit_store"
    store_enabled: bool = True

    class Config:
        env_prefix = "TREESPLIT_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False
        extra = "ignore"


# Global settings instance
settings = Settings()

# Configure logging (stderr, so stdout stays machine-readable)
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.INFO),
    format="%(asctime)s [%(levelname)s] %(name)s: %(message)s"
)
logger = logging.getLogger("treesplit")
