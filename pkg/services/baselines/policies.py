"""Comparison schemes sharing the episode engine: RNC, multicast ARQ and round-robin."""

from typing import Callable, Optional, Sequence

from pydantic import BaseModel, Field

from models.scheduling import Action, SchemeKind
from services.scheduler.gst import gst_select
from services.scheduler.state import NetworkState

SchedulerFn = Callable[[NetworkState, Sequence[float]], Action]


class ArqState(BaseModel):
    """Packet the ARQ sender is currently repeating (1-based)."""

    target: int = Field(default=1, ge=1)


def rnc_policy(state: NetworkState) -> Action:
    """Traditional RNC always codes over all L packets."""
    return Action(gen=state.layers)


def arq_policy(state: NetworkState, arq_state: Optional[ArqState] = None) -> Action:
    """Repeat alpha_j uncoded until every user holds it, then move to alpha_{j+1}.

    Once all L packets are everywhere the sender idles on alpha_L.
    """
    if arq_state is None:
        arq_state = ArqState()
    target = min(arq_state.target, state.layers)
    while target < state.layers and state.held_by_all(target):
        target += 1
    arq_state.target = target
    return Action(gen=target, uncoded=True)


def rrs_policy(state: NetworkState) -> Action:
    """alpha_{(t mod L) + 1}, regardless of feedback."""
    return Action(gen=(state.t % state.layers) + 1, uncoded=True)


def fixed_schedule(actions: Sequence[Action]) -> SchedulerFn:
    """Open-loop replay of a precomputed action list."""
    actions = tuple(actions)

    def select(state: NetworkState, pers: Sequence[float]) -> Action:
        return actions[state.t]

    return select


def scheduler_for(kind: SchemeKind) -> SchedulerFn:
    """Per-slot action rule of a scheme, as a pure function of (state, pers)."""
    if kind in (SchemeKind.UARNC, SchemeKind.UARNC_FIXED, SchemeKind.UARNC_ES):
        return gst_select
    if kind is SchemeKind.RNC:
        return lambda state, pers: rnc_policy(state)
    if kind is SchemeKind.ARQ:
        # the target only ever advances, so rescanning from alpha_1 keeps the rule a
        # pure function of the state
        return lambda state, pers: arq_policy(state)
    if kind is SchemeKind.RRS:
        return lambda state, pers: rrs_policy(state)
    raise ValueError(f"Unknown scheme: {kind}")
