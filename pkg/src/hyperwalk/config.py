from dataclasses import dataclass
from functools import lru_cache
import os

from dotenv import load_dotenv

from hyperwalk.constants import DEFAULT_LAZY_LEVEL, DEFAULT_SAMPLES, DEFAULT_SEED

# Load environment variables from .env file
load_dotenv()


@dataclass(frozen=True)
class Settings:
    max_level: int = DEFAULT_LAZY_LEVEL
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    workers: int = 1
    log_level: str = "WARNING"


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


@lru_cache()
def get_settings() -> Settings:
    """
    Get hyperwalk settings from the environment, cached for the process.
    """
    return Settings(
        max_level=_int_env("HYPERWALK_MAX_LEVEL", DEFAULT_LAZY_LEVEL),
        samples=_int_env("HYPERWALK_SAMPLES", DEFAULT_SAMPLES),
        seed=_int_env("HYPERWALK_SEED", DEFAULT_SEED),
        workers=max(1, _int_env("HYPERWALK_WORKERS", 1)),
        log_level=os.getenv("HYPERWALK_LOG_LEVEL", "WARNING").upper(),
    )
