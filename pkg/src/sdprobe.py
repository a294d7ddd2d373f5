"""
Main entry point for the spectral-density probe.

This module loads the environment, sets up logging, loads the subcommands and
runs the command-line application.
"""

import os
from typing import Optional, Sequence

from dotenv import load_dotenv

from utils import cli_app, logging  # pylint: disable=no-name-in-module


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command-line application.

    Parameters
    ----------
    argv : Sequence[str], optional
        Arguments without the program name. Defaults to ``sys.argv[1:]``.

    Returns
    -------
    int
        Process exit code.
    """
    # Load environment variables from .env file
    load_dotenv()

    logger = logging.LoggingFormatter.start_logging(
        log_name="sdprobe",
        log_level=os.getenv("LOG_LEVEL", "INFO"),
        log_path=os.getenv("LOG_PATH"),
    )

    app = cli_app.ProbeApp(logger=logger)
    app.load_commands()
    return app.run(argv)


if __name__ == "__main__":
    raise SystemExit(main())
