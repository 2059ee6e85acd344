"""
Result Store for treesplit
Parquet-based persistence of benchmark instance tables
"""

import pandas as pd
from pathlib import Path
from typing import Optional
import hashlib
import logging
from pydantic import BaseModel

from .config import settings


logger = logging.getLogger("treesplit.store")


class ResultStore:
    """Stores per-instance benchmark tables as Parquet, keyed by bench configuration."""

    def __init__(self, store_dir: Optional[str] = None, enabled: Optional[bool] = None):
        self.store_dir = Path(store_dir or settings.store_dir)
        self.enabled = settings.store_enabled if enabled is None else enabled
        self.stats = {"hits": 0, "misses": 0}

    def get_store_hash(self, config: BaseModel, fingerprint: str = "") -> str:
        """Stable hash of a configuration model plus a fingerprint of its input data."""
        return hashlib.md5((config.model_dump_json() + fingerprint).encode()).hexdigest()[:12]

    def get_store_key(self, config: BaseModel, fingerprint: str = "") -> Path:
        """Generate store file path."""
        return self.store_dir / f"bench_{self.get_store_hash(config, fingerprint)}.parquet"

    def check_store(self, config: BaseModel, fingerprint: str = "") -> Optional[pd.DataFrame]:
        """Return the stored table for this configuration, if any."""
        if not self.enabled:
            return None

        path = self.get_store_key(config, fingerprint)
        if path.exists():
            try:
                df = pd.read_parquet(path)
                self.stats["hits"] += 1
                logger.debug(f"Store HIT: {path.name}")
                return df
            except Exception as e:
                logger.warning(f"Store read error: {e}")

        self.stats["misses"] += 1
        return None

    def save_store(self, df: pd.DataFrame, config: BaseModel, fingerprint: str = "") -> bool:
        """Save a table for this configuration."""
        if not self.enabled or df.empty:
            return False

        path = self.get_store_key(config, fingerprint)
        try:
            self.store_dir.mkdir(parents=True, exist_ok=True)
            df.to_parquet(path, index=False)
            logger.debug(f"Store SAVE: {path.name}")
            return True
        except Exception as e:
            logger.warning(f"Store save error: {e}")
            return False

    def clear_store(self) -> int:
        """Delete stored tables. Returns count of deleted files."""
        deleted = 0
        if self.store_dir.exists():
            for f in self.store_dir.glob("bench_*.parquet"):
                f.unlink()
                deleted += 1

        logger.info(f"Cleared {deleted} stored tables")
        return deleted

    def get_stats(self) -> dict:
        """Get store statistics."""
        files = list(self.store_dir.glob("bench_*.parquet")) if self.store_dir.exists() else []
        total_size = sum(f.stat().st_size for f in files)

        hit_rate = 0.0
        if (self.stats["hits"] + self.stats["misses"]) > 0:
            hit_rate = self.stats["hits"] / (self.stats["hits"] + self.stats["misses"])

        return {
            "store_dir": str(self.store_dir),
            "hits": self.stats["hits"],
            "misses": self.stats["misses"],
            "hit_rate": hit_rate,
            "file_count": len(files),
            "total_size_mb": round(total_size / 1024 / 1024, 2)
        }


# Global result store instance
result_store = ResultStore()
