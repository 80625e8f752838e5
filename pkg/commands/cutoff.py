import click

from commands.options import (
    GRID,
    build_config,
    envelope_options,
    output_options,
    source_options,
    window_options,
)
from commands.runner import run


@click.command("cutoff")
@source_options
@output_options("json")
@click.pass_context
def cutoff(ctx, **params):
    """
    Cutoff time τ_n, λ*, κ_n, β_n and both window bounds, one report per n.

    JSON output is a single object for one n and a list otherwise.
    """
    ctx.exit(run(build_config("cutoff", **params)))


@click.command("profile")
@source_options
@window_options
@envelope_options
@click.option("--c", "c_grid", type=GRID, required=True, help="Offsets min:max:step.")
@output_options()
@click.pass_context
def profile(ctx, **params):
    """Separation at t = τ_n + c·b over a grid of c, with sandwich bounds where they apply."""
    ctx.exit(run(build_config("profile", **params)))


@click.command("bounds")
@source_options
@envelope_options
@click.option("--t", "t_grid", type=GRID, required=True, help="Times min:max:step.")
@output_options()
@click.pass_context
def bounds(ctx, **params):
    """Exact separation and the θ_n sandwich over a grid of times."""
    ctx.exit(run(build_config("bounds", **params)))


@click.command("diagnose")
@source_options
@window_options
@click.option("--c", "c_grid", type=GRID, default="-1:1:1", show_default=True)
@output_options()
@click.pass_context
def diagnose(ctx, **params):
    """τ_nκ_n trend and window profile of a family across several n."""
    ctx.exit(run(build_config("diagnose", **params)))
