"""
options.py

Parameter types and option groups shared by the subcommands, plus the step
that turns parsed flags into a validated RunConfig.
"""

from typing import Callable, List

import click
from pydantic import ValidationError

from schemas.envelope import PerturbationEnvelope
from schemas.run import GridSpec, RunConfig


class CommaList(click.ParamType):
    """Comma separated numbers, e.g. `100,1000,10000`."""

    def __init__(self, cast: Callable, name: str):
        self.cast = cast
        self.name = name

    def convert(self, value, param, ctx) -> List:
        if isinstance(value, list):
            return value
        try:
            return [self.cast(part.strip()) for part in str(value).split(",") if part.strip()]
        except ValueError:
            self.fail(f"{value!r} is not a comma separated list of {self.name} values", param, ctx)


class GridParam(click.ParamType):
    name = "min:max:step"

    def convert(self, value, param, ctx) -> GridSpec:
        if isinstance(value, GridSpec):
            return value
        try:
            return GridSpec.parse(value)
        except (ValueError, ValidationError) as exc:
            self.fail(f"bad grid {value!r}: {exc}", param, ctx)


INT_LIST = CommaList(int, "integer")
FLOAT_LIST = CommaList(float, "float")
GRID = GridParam()


def source_options(func):
    """--family / --measure-file and the parameters families need."""
    decorators = [
        click.option(
            "--family",
            type=click.Choice(["symmetric", "odd_windows", "random_rates", "slow_coordinate"]),
            help="Preset family of walks.",
        ),
        click.option(
            "--measure-file",
            type=click.Path(),
            help="CSV (rate,mass or rate,count) or JSON measure.",
        ),
        click.option("--n", "n_list", type=INT_LIST, default="", help="Dimension(s), comma separated."),
        click.option("--p", type=FLOAT_LIST, default="", help="Rate values of the random_rates law."),
        click.option("--q", type=FLOAT_LIST, default="", help="Probabilities of the random_rates law."),
        click.option("--family-seed", type=int, default=0, show_default=True),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def output_options(default_format: str = "csv"):
    """--output and --format, with a per-command default format."""

    def apply(func):
        func = click.option(
            "--format", "fmt", type=click.Choice(["csv", "json"]), default=default_format, show_default=True
        )(func)
        return click.option(
            "--output", type=click.Path(), help="Output file (default: CUTOFF_OUTPUT_DIR or stdout)."
        )(func)

    return apply


def window_options(func):
    decorators = [
        click.option(
            "--window",
            type=click.Choice(["left", "right", "unit", "custom"]),
            default="unit",
            show_default=True,
        ),
        click.option("--b", type=float, help="Window length for --window custom."),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def envelope_options(func):
    decorators = [
        click.option(
            "--envelope",
            type=click.Choice(["zero", "rational_decay"]),
            default="zero",
            show_default=True,
        ),
        click.option("--amplitude", type=float, default=0.0, show_default=True),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def build_config(subcommand: str, **params) -> RunConfig:
    """
    Validate parsed flags into a RunConfig.

    Raises:
        click.UsageError: On any invalid combination (exit status 2).
    """
    if "envelope" in params:
        kind = params.pop("envelope")
        amplitude = params.pop("amplitude", 0.0)
        try:
            params["envelope"] = PerturbationEnvelope(kind=kind, amplitude=amplitude)
        except ValidationError as exc:
            raise click.UsageError(f"bad envelope: {exc.errors()[0]['msg']}")
    params["format"] = params.pop("fmt", "csv")
    params["p"] = tuple(params.get("p") or ())
    params["q"] = tuple(params.get("q") or ())
    cleaned = {key: value for key, value in params.items() if value is not None}
    try:
        return RunConfig(subcommand=subcommand, **cleaned)
    except ValidationError as exc:
        messages = "; ".join(error["msg"].removeprefix("Value error, ") for error in exc.errors())
        raise click.UsageError(messages)
