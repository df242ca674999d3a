"""UAV placement by particle swarm or exhaustive grid search."""

import argparse

from models.results import ResultsTable
from models.scheduling import SchemeKind
from services.harness.monte_carlo import monte_carlo
from services.harness.streams import PSO, stream
from services.placement.grid import exhaustive_search
from services.placement.pso import optimize

slug = "place"
description = "optimize the UAV hover position"


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--method", choices=("pso", "grid"), default="pso")
    parser.add_argument("--grid-step", type=float, help="grid spacing in meters")


async def function(args, ctx) -> None:
    config = ctx.config
    scenario = ctx.scenario
    mc = config.monte_carlo
    if args.method == "grid":
        step = args.grid_step if args.grid_step is not None else config.grid_step_m
        result = await exhaustive_search(scenario, scenario.fairness, step, mc, ctx.workers)
    else:
        rng = stream(mc.master_seed, PSO, 0)
        result = await optimize(scenario, scenario.fairness, config.pso, mc, rng, ctx.workers)

    row = await monte_carlo(
        scenario,
        result.q_star,
        SchemeKind.UARNC,
        mc,
        workers=ctx.workers,
        reception=config.simulation.reception,
    )
    ctx.emit(ResultsTable(rows=[row]), trace=result)
