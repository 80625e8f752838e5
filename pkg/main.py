import click

from commands import cutoff, evt, simulate

"""
Main entrypoint for the separation-cutoff command line.

This module builds the click group and registers the subcommand modules.

Commands:
    - cutoff, profile, bounds, diagnose: Deterministic cutoff analysis of a
      rate measure or a preset family.
    - simulate: Monte-Carlo strong stationary and coupling times on the hypercube.
    - evt: Annealed separation for random coordinate rates and its Gumbel limit.

Exit status is 0 on success, 1 on a computation error and 2 on a usage or
file error.
"""


@click.group()
def cli():
    """Separation cutoff for product chains and random walks on Z_2^n."""


# Register command modules
cli.add_command(cutoff.cutoff)
cli.add_command(cutoff.profile)
cli.add_command(cutoff.bounds)
cli.add_command(cutoff.diagnose)
cli.add_command(simulate.simulate)
cli.add_command(evt.evt)


if __name__ == "__main__":
    cli()
