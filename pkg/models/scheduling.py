"""Scheduling actions, scheme names and episode outcomes."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class SchemeKind(str, Enum):
    """Transmission schemes.

    The three UARNC variants share the greedy scheduler and differ only in where
    the UAV hovers: optimized by the configured placement, at the area center, or
    at the best point of an exhaustive grid search.
    """

    UARNC = "uarnc"
    UARNC_FIXED = "uarnc-fixed"
    UARNC_ES = "uarnc-es"
    RNC = "rnc"
    ARQ = "arq"
    RRS = "rrs"


class Action(BaseModel):
    """Send one packet from generator G_gen, or alpha_gen itself when `uncoded`."""

    model_config = ConfigDict(frozen=True)

    gen: int = Field(ge=1)
    uncoded: bool = False

    def __str__(self) -> str:
        return f"a{self.gen}" if self.uncoded else f"G{self.gen}"


class EpisodeResult(BaseModel):
    """Outcome of one deadline-T block."""

    model_config = ConfigDict(frozen=True)

    per_user_prefix: tuple[int, ...]
    slots: int
    realized_actions: tuple[Action, ...]
    erasure_log: tuple[tuple[bool, ...], ...]

    @property
    def total_prefix(self) -> int:
        return sum(self.per_user_prefix)

    @property
    def throughput(self) -> float:
        """Decoded-prefix packets per user per slot."""
        return self.total_prefix / (len(self.per_user_prefix) * self.slots)
