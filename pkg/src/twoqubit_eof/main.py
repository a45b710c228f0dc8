"""Main application entry point."""

import logging
import sys
from collections.abc import Sequence

from twoqubit_eof.cli import run
from twoqubit_eof.config import get_settings


def configure_logging() -> None:
    """Send log records to standard error at the configured level."""
    settings = get_settings()
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def main(argv: Sequence[str] | None = None) -> None:
    """Run the command line interface."""
    configure_logging()
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
