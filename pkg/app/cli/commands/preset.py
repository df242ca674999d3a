"""Named experiment presets producing plot-ready tables."""

import argparse

from models.placement import PsoParams
from models.results import ResultsTable
from models.scenario import LayoutKind
from models.scheduling import SchemeKind
from services.harness.monte_carlo import monte_carlo
from services.harness.streams import PSO, stream
from services.harness.sweep import Placement, sweep
from services.placement.pso import optimize

slug = "preset"
description = "run a named experiment"

FIG3_LAYERS = list(range(1, 9))
FIG3_SLOTS = 10
FIG3_SCHEMES = [
    SchemeKind.UARNC,
    SchemeKind.UARNC_ES,
    SchemeKind.UARNC_FIXED,
    SchemeKind.RNC,
    SchemeKind.ARQ,
    SchemeKind.RRS,
]
# The L sweep re-optimizes the UAV at every value; cap the swarm per value
SWEEP_SWARM_SIZE = 30
SWEEP_SWARM_ITERATIONS = 50
FIG4_SLOTS = list(range(4, 11))
FIG4_LAYERS = 4
FIG4_SCHEMES = [SchemeKind.UARNC, SchemeKind.RNC, SchemeKind.ARQ, SchemeKind.RRS]

PRESETS = {
    "fig2-uniform": LayoutKind.UNIFORM,
    "fig2-clustered": LayoutKind.CLUSTERS,
    "fig3": None,
    "fig4": None,
}


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("name", choices=list(PRESETS))


def sweep_swarm(pso: PsoParams) -> PsoParams:
    """The configured swarm, capped at the per-value sweep budget."""
    return pso.model_copy(
        update={
            "sizepop": min(pso.sizepop, SWEEP_SWARM_SIZE),
            "maxg": min(pso.maxg, SWEEP_SWARM_ITERATIONS),
        }
    )


async def placement_comparison(ctx, layout: LayoutKind) -> None:
    """Swarm-optimized UARNC against UARNC at the area center for one user layout."""
    config = ctx.config
    ctx.replace_config(
        config.model_copy(
            update={"scenario": config.scenario.model_copy(update={"layout": layout})}
        )
    )
    config = ctx.config
    scenario = ctx.scenario
    mc = config.monte_carlo
    result = await optimize(
        scenario, scenario.fairness, config.pso, mc, stream(mc.master_seed, PSO, 0), ctx.workers
    )
    rows = [
        await monte_carlo(scenario, result.q_star, SchemeKind.UARNC, mc, workers=ctx.workers),
        await monte_carlo(
            scenario, scenario.area.center, SchemeKind.UARNC_FIXED, mc, workers=ctx.workers
        ),
    ]
    ctx.emit(ResultsTable(rows=rows), trace=result)


async def function(args, ctx) -> None:
    layout = PRESETS[args.name]
    if layout is not None:
        await placement_comparison(ctx, layout)
        return

    config = ctx.config
    if args.name == "fig3":
        scenario = ctx.scenario.with_coding(layers=1, slots=FIG3_SLOTS)
        param, values, schemes = "L", FIG3_LAYERS, FIG3_SCHEMES
        mode = "grid" if config.simulation.placement == "grid" else "pso"
        pso = sweep_swarm(config.pso)
    else:
        scenario = ctx.scenario.with_coding(layers=FIG4_LAYERS, slots=max(FIG4_SLOTS))
        param, values, schemes = "T", FIG4_SLOTS, FIG4_SCHEMES
        mode = config.simulation.placement
        pso = config.pso
    placement = Placement(mode=mode, q=config.simulation.q, grid_step=config.grid_step_m)
    table = await sweep(
        scenario,
        param,
        values,
        schemes,
        config.monte_carlo,
        placement,
        pso=pso,
        workers=ctx.workers,
        reception=config.simulation.reception,
    )
    ctx.emit(table)
