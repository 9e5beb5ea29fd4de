"""Wieferich prime scan."""

import click

from ..services.number_theory import wieferich_primes
from .common import RunConfig, command_guard


@click.command("wieferich")
@click.option("--limit", type=int, required=True, help="Scan primes up to this bound.")
def wieferich_command(limit):
    """Print each Wieferich prime p <= limit (2^(p-1) = 1 mod p^2), one per line."""
    with command_guard():
        config = RunConfig(command="wieferich", limit=limit)
        config.check()
        for p in wieferich_primes(config.limit):
            click.echo(p)
