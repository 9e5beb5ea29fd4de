"""Shared run configuration, click options and the error-to-exit-code guard."""

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Literal, Optional

import click
from pydantic import BaseModel

from ..errors import CycloError, ParameterError, exit_code_for
from ..services.cyclotomy import CyclotomicParams, build_params
from ..services.lc_engine import METHODS
from ..services.number_theory import is_odd_prime

logger = logging.getLogger(__name__)

Command = Literal["generate", "predict", "measure", "verify", "identities", "wieferich"]

# Commands that act on one parameter tuple
PARAM_COMMANDS = ("generate", "predict", "measure", "identities")


class RunConfig(BaseModel):
    """Parsed command line for one invocation."""

    command: Command
    p: Optional[int] = None
    n: Optional[int] = None
    e: Optional[int] = None
    b: int = 0
    g: Optional[int] = None
    method: Literal["bm", "gcd", "roots", "all"] = "all"
    format: Literal["bits", "hex", "csv", "json"] = "json"
    cap_period: Optional[int] = None
    cap_degree: Optional[int] = None
    p_max: Optional[int] = None
    n_max: Optional[int] = None
    all_b: bool = False
    limit: Optional[int] = None
    workers: Optional[int] = None
    sample_budget: Optional[int] = None
    orbit_reduce: bool = False
    output: Optional[Path] = None
    dump_classes: Optional[Path] = None

    def validate_inputs(self) -> list[str]:
        """Validate all inputs and return list of errors."""
        errors = []

        if self.command in PARAM_COMMANDS:
            for name in ("p", "n", "e"):
                if getattr(self, name) is None:
                    errors.append(f"--{name} is required for {self.command}")
            if self.p is not None and not is_odd_prime(self.p):
                errors.append("p must be an odd prime")
            if self.n is not None and self.n < 1:
                errors.append("n must be at least 1")
            if self.b < 0:
                errors.append("b must be nonnegative")

        for name in ("cap_period", "cap_degree", "workers", "sample_budget"):
            value = getattr(self, name)
            if value is not None and value < 1:
                errors.append(f"--{name.replace('_', '-')} must be at least 1")

        if self.command == "verify":
            if self.p_max is None or self.p_max < 1:
                errors.append("--p-max must be a positive integer")
            if self.n_max is None or self.n_max < 1:
                errors.append("--n-max must be a positive integer")

        if self.command == "wieferich" and (self.limit is None or self.limit < 3):
            errors.append("--limit must be at least 3")

        return errors

    def check(self) -> None:
        """Raise one ParameterError carrying every validation problem."""
        errors = self.validate_inputs()
        if errors:
            raise ParameterError("; ".join(errors))

    def params(self) -> CyclotomicParams:
        return build_params(self.p, self.n, self.e, self.b, self.g)

    def methods(self) -> tuple[str, ...]:
        return METHODS if self.method == "all" else (self.method,)


@contextmanager
def command_guard():
    """Turn domain errors into a one-line diagnostic and the matching exit code."""
    try:
        yield
    except CycloError as exc:
        logger.debug(f"{type(exc).__name__}: {exc}", exc_info=True)
        click.echo(f"Error: {exc}", err=True)
        raise SystemExit(exit_code_for(exc)) from exc


def _parse_generator(ctx, param, value):
    if value is None or value == "auto":
        return None
    try:
        return int(value)
    except ValueError as exc:
        raise click.BadParameter("expected an integer or 'auto'") from exc


def params_options(func):
    """--p, --n, --e, --b and --g."""
    options = [
        click.option("--p", "p", type=int, help="Odd prime p."),
        click.option("--n", "n", type=int, help="Exponent n, period p^n."),
        click.option("--e", "e", type=int, help="Divisor e of p - 1 with (p - 1)/e a power of two."),
        click.option("--b", "b", type=int, default=0, show_default=True, help="Class offset b."),
        click.option("--g", "g", default="auto", show_default=True, callback=_parse_generator,
                     help="Primitive root modulo p^2, or 'auto' for the smallest."),
    ]
    for option in reversed(options):
        func = option(func)
    return func
