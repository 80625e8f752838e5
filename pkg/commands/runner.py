from pathlib import Path
from typing import List, Optional

import click
import numpy as np
from pydantic import ValidationError

from analysis.cutoff import cutoff_time, family_diagnostics, profile
from analysis.errors import AnalysisError
from analysis.evt import annealed_sep, gumbel_limit
from analysis.families import generate
from analysis.hypercube import (
    dkw_half_width,
    exact_tail_for,
    simulate_coupling,
    simulate_sst,
    sup_distance,
)
from analysis.rate_measure import expand_rates
from analysis.separation import LOG2, sandwich_bounds, sep_tuple
from config import OUTPUT_DIR
from dependencies import logger
from files.export import (
    profile_to_csv,
    samples_to_csv,
    simulation_summary,
    table_to_csv,
    to_json,
)
from files.normalize import read_measure_file
from schemas.evt import RandomRateModel
from schemas.family import FamilyDescriptor, FamilyMember
from schemas.run import RunConfig
from schemas.walk import WalkSpec

# Points of the default t-grid used to compare simulated and exact tails
COMPARISON_POINTS = 200

REPORT_COLUMNS = ["n", "tau", "lambda_star", "kappa", "beta", "tau_kappa", "b_left", "b_right"]


def family_descriptor(config: RunConfig) -> FamilyDescriptor:
    model = RandomRateModel(p=config.p, q=config.q) if config.family == "random_rates" else None
    return FamilyDescriptor(kind=config.family, model=model, seed=config.family_seed)


def members(config: RunConfig) -> List[FamilyMember]:
    """
    Resolve the configured measure source into one member per requested n.

    A measure file yields a single member; its own n wins over --n (which only
    supplies n for `rate,mass` files).
    """
    if config.measure_file is not None:
        n = config.n_list[0] if config.n_list else None
        measure = read_measure_file(config.measure_file, n)
        walk = None
        if measure.counts is not None:
            walk = WalkSpec(n=measure.n, rho=tuple((expand_rates(measure) / 2.0).tolist()))
        return [FamilyMember(measure=measure, walk=walk)]
    family = family_descriptor(config)
    return [generate(family, n) for n in config.n_list]


def run_cutoff(config: RunConfig) -> str:
    reports = [cutoff_time(member.measure) for member in members(config)]
    if config.format == "json":
        return to_json(reports[0] if len(reports) == 1 else reports)
    rows = [tuple(getattr(r, col) for col in REPORT_COLUMNS) for r in reports]
    return table_to_csv(REPORT_COLUMNS, rows)


def run_profile(config: RunConfig) -> str:
    measure = members(config)[0].measure
    result = profile(measure, config.window, config.c_grid.values(), config.b, config.envelope)
    return to_json(result) if config.format == "json" else profile_to_csv(result)


def run_bounds(config: RunConfig) -> str:
    measure = members(config)[0].measure
    threshold = LOG2 / measure.kappa
    rows = []
    for t in config.t_grid.values():
        if t < 0:
            continue
        lower, upper = (None, None)
        if t >= threshold:
            lower, upper = sandwich_bounds(measure, t, config.envelope)
        rows.append((t, sep_tuple(measure, t), lower, upper))
    if config.format == "json":
        return to_json([dict(zip(["t", "sep", "lower", "upper"], row)) for row in rows])
    return table_to_csv(["t", "sep", "lower", "upper"], rows)


def run_simulate(config: RunConfig) -> str:
    member = members(config)[0]
    if member.walk is None:
        raise AnalysisError("simulation needs coordinate rates (a family or a rate,count file)")
    if config.kind == "sst":
        result = simulate_sst(member.walk, config.replicas, config.seed)
    else:
        result = simulate_coupling(member.walk, config.replicas, config.seed)

    exact = exact_tail_for(result)
    grid = (
        config.t_grid.values()
        if config.t_grid is not None
        else np.linspace(0.0, float(result.sorted_samples[-1]), COMPARISON_POINTS).tolist()
    )
    distance = sup_distance(result, exact, grid)
    band = dkw_half_width(result.replicas, 0.01)
    # one summary line, kept off stdout so CSV written there stays clean
    click.echo(
        f"summary: kind={result.kind} n={result.spec.n} replicas={result.replicas} "
        f"seed={result.seed} sup_distance={distance:.10g} dkw99_half_width={band:.10g}",
        err=True,
    )
    if config.comparison is not None:
        empirical = np.atleast_1d(result.survival(np.asarray(grid)))
        rows = [(t, float(e), exact(t)) for t, e in zip(grid, empirical)]
        Path(config.comparison).write_text(table_to_csv(["t", "empirical", "exact"], rows))
    if config.format == "json":
        return to_json(simulation_summary(result, {"sup_distance": distance, "dkw99_half_width": band}))
    return samples_to_csv(result)


def run_evt(config: RunConfig) -> str:
    model = RandomRateModel(p=config.p, q=config.q)
    rows = []
    for n in config.n_list:
        for c in config.c_grid.values():
            annealed = annealed_sep(model, n, c)
            limit = gumbel_limit(model, c)
            rows.append((n, c, annealed.value, limit, abs(annealed.value - limit), int(annealed.clamped)))
    columns = ["n", "c", "annealed", "limit", "gap", "clamped"]
    if config.format == "json":
        return to_json([dict(zip(columns, row)) for row in rows])
    return table_to_csv(columns, rows)


def run_diagnose(config: RunConfig) -> str:
    result = family_diagnostics(
        family_descriptor(config), config.n_list, config.c_grid.values(), config.window, config.b
    )
    logger.info(f"tau*kappa trend over n={config.n_list}: {result.trend}")
    if config.format == "json":
        return to_json(result)
    columns = REPORT_COLUMNS + ["necessary_floor"] + [f"sep_c={c:.10g}" for c in result.c_grid]
    return table_to_csv(columns, result.rows())


HANDLERS = {
    "cutoff": run_cutoff,
    "profile": run_profile,
    "bounds": run_bounds,
    "simulate": run_simulate,
    "evt": run_evt,
    "diagnose": run_diagnose,
}


def destination(config: RunConfig) -> Optional[Path]:
    """Output file for a run; None means standard output."""
    if config.output is not None:
        return config.output
    if OUTPUT_DIR:
        return Path(OUTPUT_DIR) / f"{config.subcommand}.{config.format}"
    return None


def run(config: RunConfig) -> int:
    """
    Execute one subcommand and write its output.

    Output goes to --output, else to CUTOFF_OUTPUT_DIR/<subcommand>.<format>,
    else to standard output.

    Returns:
        int: 0 on success, 1 on a computation error, 2 on an unreadable or
            unwritable file.
    """
    try:
        text = HANDLERS[config.subcommand](config)
    except AnalysisError as exc:
        logger.error(str(exc))
        return 1
    except ValidationError as exc:
        logger.error(f"invalid parameters: {exc.errors()[0]['msg']}")
        return 2
    except OSError as exc:
        logger.error(str(exc))
        return 2

    path = destination(config)
    if path is None:
        click.echo(text, nl=False)
        return 0
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        logger.error(f"cannot write {path}: {exc}")
        return 2
    logger.info(f"wrote {path}")
    return 0
