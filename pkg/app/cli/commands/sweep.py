"""Throughput of several schemes over a range of L or T."""

import argparse

from models.scheduling import SchemeKind
from services.harness.sweep import Placement, sweep

slug = "sweep"
description = "sweep L or T over a list of values"


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--param", choices=("L", "T"), required=True)
    parser.add_argument("--values", type=int, nargs="+", required=True)
    parser.add_argument(
        "--schemes", nargs="+", choices=[s.value for s in SchemeKind], help="default: config"
    )
    parser.add_argument("--placement", choices=("fixed", "pso", "grid"), help="default: config")


async def function(args, ctx) -> None:
    config = ctx.config
    schemes = [SchemeKind(s) for s in args.schemes] if args.schemes else config.schemes
    placement = Placement(
        mode=args.placement or config.simulation.placement,
        q=config.simulation.q,
        grid_step=config.grid_step_m,
    )
    table = await sweep(
        ctx.scenario,
        args.param,
        args.values,
        schemes,
        config.monte_carlo,
        placement,
        pso=config.pso,
        workers=ctx.workers,
        reception=config.simulation.reception,
    )
    ctx.emit(table)
