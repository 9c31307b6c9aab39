import sys
from typing import Optional, Sequence

import click
from loguru import logger

from fock_splitter.cli import cli
from fock_splitter.config import config
from fock_splitter.exceptions import FockSplitterError

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} - {name} - {level} - {message}"


def configure_logging(level: Optional[str] = None) -> None:
    """Send diagnostics to stderr; stdout carries results only."""
    level = level or config.LOG_LEVEL
    logger.remove()
    # Resolve sys.stderr per message so redirected streams are honoured.
    logger.add(lambda message: sys.stderr.write(message), level=level.upper(), format=LOG_FORMAT)


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """Run one CLI invocation and return its exit code."""
    configure_logging(config.LOG_LEVEL)
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="fock-splitter", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except FockSplitterError as e:
        logger.error(f"{type(e).__name__}: {e}")
        click.echo(f"Error: {e}", err=True)
        return 2
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(run_cli())
