import click

from commands.options import FLOAT_LIST, GRID, INT_LIST, build_config, output_options
from commands.runner import run


@click.command("evt")
@click.option("--p", type=FLOAT_LIST, required=True, help="Rate values, comma separated.")
@click.option("--q", type=FLOAT_LIST, required=True, help="Their probabilities, comma separated.")
@click.option("--n", "n_list", type=INT_LIST, required=True, help="Dimension(s), comma separated.")
@click.option("--c", "c_grid", type=GRID, required=True, help="Offsets min:max:step.")
@output_options()
@click.pass_context
def evt(ctx, **params):
    """Annealed separation for random coordinate rates against its Gumbel limit."""
    ctx.exit(run(build_config("evt", **params)))
