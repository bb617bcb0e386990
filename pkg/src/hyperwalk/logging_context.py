import logging
import sys
import uuid
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator, Optional

LOG_FORMAT = "%(asctime)s - %(name)s - [%(run)s] %(levelname)s - %(message)s"

logger = logging.getLogger("hyperwalk.run")

# Current run label, shown in every log record
run_id_var: ContextVar[Optional[str]] = ContextVar("hyperwalk_run_id", default=None)


@contextmanager
def run_context(label: str) -> Iterator[str]:
    """Context manager that tags log records emitted inside it with a run id."""
    run_id = f"{label}-{uuid.uuid4().hex[:8]}"
    token = run_id_var.set(run_id)
    logger.info(f"Run started: {run_id}")
    try:
        yield run_id
    except Exception as e:
        logger.error(f"Run failed: {run_id} ({e.__class__.__name__}: {e})")
        raise
    finally:
        logger.info(f"Run finished: {run_id}")
        run_id_var.reset(token)


def get_current_run_id() -> Optional[str]:
    """Get the current run id from context"""
    return run_id_var.get()


class RunContextFilter(logging.Filter):
    def filter(self, record: logging.LogRecord) -> bool:
        record.run = get_current_run_id() or "-"
        return True


def configure_logging(level: str = "WARNING") -> None:
    """Send hyperwalk logs to stderr; stdout is reserved for reports."""
    root = logging.getLogger("hyperwalk")
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.addFilter(RunContextFilter())
    root.addHandler(handler)
    root.setLevel(level)
    root.propagate = False
