import click

from commands.options import GRID, build_config, output_options, source_options
from commands.runner import run


@click.command("simulate")
@source_options
@click.option("--kind", type=click.Choice(["sst", "coupling"]), default="sst", show_default=True)
@click.option("--replicas", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--t", "t_grid", type=GRID, help="Comparison times min:max:step (default: 0 to the largest sample).")
@click.option("--comparison", type=click.Path(), help="Write `t,empirical,exact` to this CSV.")
@output_options()
@click.pass_context
def simulate(ctx, **params):
    """
    Monte-Carlo samples of the strong stationary time or the coupling time.

    Prints one summary line with the sup-distance between the empirical and
    exact tails and the 99% DKW half-width. CSV output lists every sample;
    JSON output is a summary with the 0.5, 0.9 and 0.99 quantiles.
    """
    ctx.exit(run(build_config("simulate", **params)))
