"""Sequence generation command."""

import logging
from pathlib import Path
from typing import Optional

import click

from ..deps import get_storage_service
from ..services.sequence_gen import generate
from ..services.storage import SEQUENCE_FORMATS
from .common import RunConfig, command_guard, params_options

logger = logging.getLogger(__name__)


@click.command("generate")
@params_options
@click.option("--format", "fmt", type=click.Choice(list(SEQUENCE_FORMATS)), default="bits", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), help="Sequence file (default: outputs dir).")
@click.option("--dump-classes", type=click.Path(dir_okay=False, path_type=Path), help="Also write the class dump as JSON.")
@click.option("--cap-period", type=int, help="Largest period p^n accepted.")
def generate_command(p, n, e, b, g, fmt, output: Optional[Path], dump_classes: Optional[Path], cap_period):
    """Write one period of the sequence and print a summary line."""
    with command_guard():
        config = RunConfig(
            command="generate", p=p, n=n, e=e, b=b, g=g, format=fmt,
            output=output, dump_classes=dump_classes, cap_period=cap_period,
        )
        config.check()
        params = config.params()

        seq = generate(params, config.cap_period)
        storage = get_storage_service(output.parent if output else None)
        path = storage.save_sequence(seq, config.format, output)
        if dump_classes:
            storage.dump_classes_file(params, dump_classes)

        click.echo(f"N={seq.period} weight={seq.weight} params={params.echo()} file={path}")
