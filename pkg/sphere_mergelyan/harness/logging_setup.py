"""
Logging setup and run statistics for the command-line harness.
"""

import logging
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from config import LoggingSettings, settings

logger = logging.getLogger(__name__)

BANNER = "=" * 70


def setup_logging(log_settings: Optional[LoggingSettings] = None, level: Optional[str] = None) -> logging.Logger:
    """Set up structured logging with file and console output."""
    cfg = log_settings or settings.logging
    handlers: list = []

    if cfg.console_enabled:
        handlers.append(logging.StreamHandler())
    if cfg.file_enabled:
        log_path = Path(cfg.file_path)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(
            RotatingFileHandler(
                log_path,
                maxBytes=cfg.file_max_bytes,
                backupCount=cfg.file_backup_count,
                encoding="utf-8",
            )
        )

    logging.basicConfig(
        level=(level or cfg.level).upper(),
        format=cfg.format,
        datefmt=cfg.date_format,
        handlers=handlers or [logging.NullHandler()],
        force=True,
    )
    return logging.getLogger("sphere_mergelyan")


def banner(title: str) -> None:
    logger.info(BANNER)
    logger.info(title)
    logger.info(BANNER)


class RunStats:
    """Track per-degree outcomes of a harness run."""

    def __init__(self, command: str):
        self.command = command
        self.degrees_run = 0
        self.degrees_failed = 0
        self.best_total: Optional[float] = None
        self.start_time = datetime.now()

    def record(self, total: Optional[float]) -> None:
        self.degrees_run += 1
        if total is None:
            self.degrees_failed += 1
        elif self.best_total is None or total < self.best_total:
            self.best_total = total

    def print_summary(self) -> None:
        """Print final statistics."""
        elapsed = (datetime.now() - self.start_time).total_seconds()
        logger.info(BANNER)
        logger.info(f"{self.command.upper()} STATISTICS")
        logger.info(BANNER)
        logger.info(f"  Degrees run: {self.degrees_run}")
        logger.info(f"  Degrees failed: {self.degrees_failed}")
        if self.best_total is not None:
            logger.info(f"  Best total sup-error: {self.best_total:.3e}")
        logger.info(f"  Elapsed time: {elapsed:.1f}s")
        if self.degrees_run > 0:
            logger.info(f"  Average time per degree: {elapsed / self.degrees_run:.2f}s")
