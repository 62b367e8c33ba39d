"""Configuration management for detlab."""

import logging
import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    """Process-wide settings via environment variables.

    Experiment parameters live in the experiment config file; the environment
    only controls logging and where results go.
    """

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO").upper()

    # Output
    OUTPUT_DIR: str = os.getenv("DETLAB_OUTPUT_DIR", "results")

    # Numerical defaults (overridden per experiment by the config file)
    DEFAULT_T0: float = 1.0
    DEFAULT_MODE_CUTOFF: int = 64
    TAIL_SUBSTITUTION_MU_R: float = 40.0

    # Dispatcher
    MAX_WORKERS: int = int(os.getenv("DETLAB_MAX_WORKERS", "4"))

    @classmethod
    def validate(cls) -> None:
        """Validate configuration settings."""
        if not isinstance(logging.getLevelName(cls.LOG_LEVEL), int):
            raise ValueError(f"Invalid LOG_LEVEL: {cls.LOG_LEVEL}")

        if cls.MAX_WORKERS < 1:
            raise ValueError(f"DETLAB_MAX_WORKERS must be >= 1, got {cls.MAX_WORKERS}")

        if not cls.OUTPUT_DIR:
            raise ValueError("DETLAB_OUTPUT_DIR must not be empty")
