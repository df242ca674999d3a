"""Exact oracles: expectation over every erasure pattern, and best open-loop schedule."""

import itertools
from typing import Optional, Sequence

import numpy as np

from config.log_setup import get_logger
from models.geometry import Point2D
from models.scenario import Scenario
from models.scheduling import Action
from services.channel.link import packet_error_rates
from services.errors import InstanceTooLargeError

from .episode import Policy, play_slot, resolve_scheduler
from .state import NetworkState

logger = get_logger(__name__)

MAX_EXACT_CELLS = 20


def enumerate_exact(
    scenario: Scenario,
    q: Point2D,
    scheme: Policy,
    *,
    pers: Optional[Sequence[float]] = None,
) -> float:
    """Expected episode throughput, summed over all 2^(K*T) erasure patterns.

    Policies are deterministic in the state, so identical (t, state) subtrees are
    evaluated once.
    """
    num_users, slots = scenario.num_users, scenario.slots
    if num_users * slots > MAX_EXACT_CELLS:
        raise InstanceTooLargeError(
            f"K*T = {num_users * slots} exceeds the exact-enumeration limit {MAX_EXACT_CELLS}"
        )
    if pers is None:
        pers = packet_error_rates(scenario, q)
    pers = [float(p) for p in pers]
    select = resolve_scheduler(scheme)
    outcomes = list(itertools.product((True, False), repeat=num_users))
    memo: dict[tuple, float] = {}

    def expected_total(state: NetworkState) -> float:
        if state.t == slots:
            return float(sum(state.prefixes()))
        key = state.signature()
        if key in memo:
            return memo[key]
        action = select(state, pers)
        value = 0.0
        for received in outcomes:
            weight = 1.0
            for got, p in zip(received, pers):
                weight *= (1.0 - p) if got else p
            if weight == 0.0:
                continue
            child = state.copy()
            play_slot(child, action, received)
            value += weight * expected_total(child)
        memo[key] = value
        return value

    total = expected_total(NetworkState(num_users, scenario.layers, slots))
    logger.debug("Exact enumeration visited %d states", len(memo))
    return total / (num_users * slots)


def replay_schedule(
    layers: int, actions: Sequence[Action], erasures: Sequence[Sequence[bool]]
) -> list[int]:
    """Per-user generic prefixes after playing `actions` against a forced erasure pattern."""
    erasures = np.asarray(erasures, dtype=bool)
    num_users, slots = erasures.shape
    state = NetworkState(num_users, layers, slots)
    for t, action in enumerate(actions):
        play_slot(state, action, ~erasures[:, t])
    return state.prefixes()


def search_schedules(
    layers: int, erasures: Sequence[Sequence[bool]]
) -> tuple[int, tuple[Action, ...]]:
    """Best total decoded prefix over all L^T generator schedules; first maximum wins."""
    erasures = np.asarray(erasures, dtype=bool)
    slots = erasures.shape[1]
    best_total, best_actions = -1, ()
    for gens in itertools.product(range(1, layers + 1), repeat=slots):
        actions = tuple(Action(gen=g) for g in gens)
        total = sum(replay_schedule(layers, actions, erasures))
        if total > best_total:
            best_total, best_actions = total, actions
    return best_total, best_actions
