"""Automatic registration of CLI subcommands from app/cli/commands/*.py.

A command module exposes `slug`, `description`, `configure(parser)` and an async
`function(args, ctx)`.
"""

from __future__ import annotations

import argparse
import importlib
import pkgutil
from typing import Awaitable, Callable, Sequence

CommandFn = Callable[..., Awaitable[None]]


class CommandRegistry:
    """Discovers command modules and wires them into argparse subparsers."""

    def __init__(self):
        self._commands: dict[str, CommandFn] = {}

    def register_all(
        self,
        subparsers: argparse._SubParsersAction,
        parents: Sequence[argparse.ArgumentParser] = (),
    ) -> None:
        """Add one subparser per command module; `parents` supply shared flags."""
        from . import commands

        package = commands
        for _, module_name, is_pkg in pkgutil.iter_modules(package.__path__):
            if is_pkg:
                continue
            mod = importlib.import_module(f"{package.__name__}.{module_name}")
            slug = getattr(mod, "slug", None)
            func = getattr(mod, "function", None)
            if not (slug and func):
                continue
            parser = subparsers.add_parser(
                slug, help=getattr(mod, "description", None), parents=list(parents)
            )
            configure = getattr(mod, "configure", None)
            if configure:
                configure(parser)
            self._commands[slug] = func

    def get(self, slug: str) -> CommandFn:
        return self._commands[slug]

    @property
    def slugs(self) -> list[str]:
        return sorted(self._commands)
