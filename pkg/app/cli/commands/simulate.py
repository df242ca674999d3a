"""Monte Carlo throughput of one scheme at one UAV position."""

import argparse

from app.cli.messages import get_message
from config.log_setup import get_logger
from models.geometry import Point2D
from models.results import ResultsTable
from models.scheduling import SchemeKind
from services.analytics.decode_distribution import fairness_report
from services.errors import ParameterError
from services.harness.monte_carlo import monte_carlo

logger = get_logger(__name__)

slug = "simulate"
description = "simulate one scheme at a fixed position"


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--scheme", choices=[s.value for s in SchemeKind], default=SchemeKind.UARNC.value
    )
    parser.add_argument("--qx", type=float, help="UAV x (default: config or area center)")
    parser.add_argument("--qy", type=float, help="UAV y (default: config or area center)")


def resolve_position(args, ctx) -> Point2D:
    scenario = ctx.scenario
    base = ctx.config.simulation.q or scenario.area.center
    q = Point2D(
        x=args.qx if args.qx is not None else base.x,
        y=args.qy if args.qy is not None else base.y,
    )
    if not scenario.area.contains(q):
        raise ParameterError(f"UAV position ({q.x}, {q.y}) lies outside the area")
    return q


async def function(args, ctx) -> None:
    scheme = SchemeKind(args.scheme)
    scenario = ctx.scenario
    q = scenario.area.center if scheme is SchemeKind.UARNC_FIXED else resolve_position(args, ctx)

    report = fairness_report(q, scenario, scenario.fairness)
    worst = report.worst_user
    message = get_message(
        "fairness_worst",
        user=worst,
        per=report.pers[worst],
        l_min=scenario.fairness.l_min,
        prob=report.at_least[worst],
        p_th=report.p_th,
    )
    if report.feasible:
        logger.info(message)
    else:
        logger.warning(message)

    row = await monte_carlo(
        scenario,
        q,
        scheme,
        ctx.config.monte_carlo,
        workers=ctx.workers,
        reception=ctx.config.simulation.reception,
    )
    ctx.emit(ResultsTable(rows=[row]))
