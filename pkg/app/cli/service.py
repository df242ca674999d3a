from __future__ import annotations

import argparse
import time
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from config.experiment import ExperimentConfig, load_config
from config.log_setup import get_logger
from config.settings import get_config
from models.placement import SwarmResult
from models.results import ResultsTable
from models.scenario import Scenario
from services.errors import (
    ConfigError,
    InfeasibleProblemError,
    ParameterError,
    SweepDomainError,
)
from services.results.writer import write_results

from .messages import get_message
from .registry import CommandRegistry

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INFEASIBLE = 2


class RunContext:
    """Resolved configuration and output destination of one command."""

    def __init__(
        self,
        config: ExperimentConfig,
        command: str,
        argv: Sequence[str],
        out: Optional[Path] = None,
        fmt: Optional[str] = None,
    ):
        settings = get_config()
        self.config = config
        self.command = command
        self.argv = list(argv)
        self.fmt = fmt or config.output.format or settings.default_format
        if out is None:
            base = Path(config.output.dir or settings.results_dir)
            out = base / f"{config.output.stem}.{self.fmt}"
        self.out = out
        self.workers = settings.worker_count
        self._scenario: Optional[Scenario] = None

    @property
    def scenario(self) -> Scenario:
        if self._scenario is None:
            self._scenario = self.config.to_scenario()
        return self._scenario

    def replace_config(self, config: ExperimentConfig) -> None:
        self.config = config
        self._scenario = None

    def emit(self, table: ResultsTable, trace: Optional[SwarmResult] = None) -> list[Path]:
        """Print the rows and write the table with its sibling records."""
        for row in table.rows:
            print(
                get_message(
                    "row",
                    scheme=row.scheme,
                    L=row.layers,
                    T=row.slots,
                    K=row.num_users,
                    qx=row.qx,
                    qy=row.qy,
                    mean=row.mean_throughput,
                    lo=row.ci95_lo,
                    hi=row.ci95_hi,
                    flag="" if row.feasible else get_message("row_infeasible_flag"),
                )
            )
        if trace is not None:
            print(
                get_message(
                    "placement",
                    method=trace.method.upper(),
                    qx=trace.q_star.x,
                    qy=trace.q_star.y,
                    fitness=trace.fitness,
                    iterations=trace.iterations,
                    evaluations=trace.evaluations,
                )
            )
        written = write_results(
            table,
            self.out,
            self.fmt,
            trace=trace,
            config=self.config.resolved(),
            command=self.argv,
        )
        for path in written:
            print(get_message("written", path=path))
        return written


class CliService:
    """Parses argv, dispatches to a registered command and maps failures to exit codes."""

    def __init__(self, registry: Optional[CommandRegistry] = None):
        self.registry = registry or CommandRegistry()
        self.parser = self._build_parser()

    @staticmethod
    def _add_global_flags(parser: argparse.ArgumentParser, default=None) -> None:
        """Flags accepted both before and after the subcommand."""
        parser.add_argument("--config", type=Path, default=default, help="experiment JSON file")
        parser.add_argument("--seed", type=int, default=default, help="master seed override")
        parser.add_argument(
            "--runs", type=int, default=default, help="Monte Carlo replications override"
        )
        parser.add_argument("--out", type=Path, default=default, help="results file")
        parser.add_argument(
            "--format", choices=("csv", "json"), default=default, help="results format"
        )

    def _build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="uarnc",
            description="UAV-assisted layered network coding: placement, scheduling and simulation",
        )
        self._add_global_flags(parser)
        # Suppressed defaults keep a value given before the subcommand
        common = argparse.ArgumentParser(add_help=False)
        self._add_global_flags(common, default=argparse.SUPPRESS)
        subparsers = parser.add_subparsers(dest="command", required=True)
        self.registry.register_all(subparsers, parents=[common])
        return parser

    async def run(self, argv: Sequence[str]) -> int:
        try:
            args = self.parser.parse_args(list(argv))
        except SystemExit as e:
            if e.code in (0, None):
                return EXIT_OK
            print(get_message("error_usage"))
            return EXIT_VALIDATION

        started = time.perf_counter()
        logger.info("Command %s starting", args.command)
        try:
            config = load_config(args.config).with_overrides(seed=args.seed, runs=args.runs)
            ctx = RunContext(config, args.command, argv, out=args.out, fmt=args.format)
            await self.registry.get(args.command)(args, ctx)
        except (ConfigError, ValidationError, SweepDomainError, ParameterError) as e:
            logger.error("Command %s rejected: %s", args.command, e)
            print(get_message("error_validation", detail=e))
            return EXIT_VALIDATION
        except InfeasibleProblemError as e:
            logger.error("Command %s infeasible: %s", args.command, e)
            print(get_message("error_infeasible", detail=e))
            return EXIT_INFEASIBLE
        except Exception:
            logger.exception("Command %s failed", args.command)
            raise

        elapsed = time.perf_counter() - started
        logger.info("Command %s finished in %.1fs", args.command, elapsed)
        print(get_message("done", command=args.command, seconds=elapsed))
        return EXIT_OK
