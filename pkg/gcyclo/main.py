"""Command-line application."""

import logging

import click

from .config import settings
from .routers.complexity import identities_command, measure_command, predict_command, verify_command
from .routers.primes import wieferich_command
from .routers.sequences import generate_command

# Configure logging
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper()),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


@click.group()
@click.version_option(settings.app_version, prog_name=settings.app_name)
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), help="Override LOG_LEVEL.")
def cli(log_level):
    """Generalized cyclotomic sequences of period p^n and their linear complexity."""
    if log_level:
        logging.getLogger().setLevel(log_level.upper())


cli.add_command(generate_command)
cli.add_command(predict_command)
cli.add_command(measure_command)
cli.add_command(verify_command)
cli.add_command(identities_command)
cli.add_command(wieferich_command)


def main():
    """Main entry point for the application."""
    cli()


if __name__ == "__main__":
    main()
