"""Slot-by-slot simulation of one block with perfect per-slot feedback."""

from typing import Optional, Sequence, Union

import numpy as np

from config.log_setup import get_logger
from models.geometry import Point2D
from models.scenario import ReceptionModel, Scenario
from models.scheduling import Action, EpisodeResult, SchemeKind
from services.baselines.policies import SchedulerFn, scheduler_for
from services.channel.link import packet_error_rates
from services.coding.packets import encode, uncoded_packet

from .state import NetworkState

logger = get_logger(__name__)

Policy = Union[SchemeKind, SchedulerFn]


def resolve_scheduler(scheme: Policy) -> SchedulerFn:
    if isinstance(scheme, SchemeKind):
        return scheduler_for(scheme)
    if isinstance(scheme, str):
        return scheduler_for(SchemeKind(scheme))
    return scheme


def play_slot(
    state: NetworkState,
    action: Action,
    received: Sequence[bool],
    coeff_rng: Optional[np.random.Generator] = None,
) -> None:
    """Deliver `action`'s packet to the users flagged in `received` and advance t."""
    packet = None
    if coeff_rng is not None and any(received):
        if action.uncoded:
            packet = uncoded_packet(action.gen, state.layers, slot=state.t)
        else:
            packet = encode(action.gen, state.layers, coeff_rng, slot=state.t)
    for user, got in zip(state.per_user, received):
        if got:
            user.receive(action, packet)
    state.t += 1


def run_episode(
    scenario: Scenario,
    q: Point2D,
    scheme: Policy,
    rng: np.random.Generator,
    *,
    erasures: Optional[Sequence[Sequence[bool]]] = None,
    pers: Optional[Sequence[float]] = None,
    reception: ReceptionModel = "generic",
) -> EpisodeResult:
    """Simulate T slots of `scheme` for a UAV hovering at `q`.

    Each slot user i loses the packet with probability p_i (uniform draw below p_i),
    unless `erasures[i][t]` forces the outcome. `pers` overrides the geometric PERs.
    """
    num_users, layers, slots = scenario.num_users, scenario.layers, scenario.slots
    if pers is None:
        pers = packet_error_rates(scenario, q)
    pers = np.asarray(pers, dtype=float)
    if pers.shape != (num_users,):
        raise ValueError(f"Expected {num_users} packet error rates, got {pers.shape}")
    if erasures is not None:
        erasures = np.asarray(erasures, dtype=bool)
        if erasures.shape != (num_users, slots):
            raise ValueError(
                f"Erasure pattern must be {num_users}x{slots}, got {erasures.shape}"
            )

    select = resolve_scheduler(scheme)
    explicit = reception == "explicit"
    # Separate children keep the erasure draws identical across schemes and positions
    erasure_rng, coeff_rng = rng.spawn(2)
    state = NetworkState(num_users, layers, slots, explicit=explicit)
    actions: list[Action] = []
    log = np.zeros((num_users, slots), dtype=bool)

    for t in range(slots):
        action = select(state, pers)
        draws = erasure_rng.random(num_users)
        lost = erasures[:, t] if erasures is not None else draws < pers
        log[:, t] = lost
        play_slot(state, action, ~lost, coeff_rng if explicit else None)
        actions.append(action)

    if explicit:
        prefixes = tuple(u.explicit_prefix() for u in state.per_user)
    else:
        prefixes = tuple(state.prefixes())
    logger.debug(
        "Episode done: q=(%.1f, %.1f) prefixes=%s actions=%s",
        q.x,
        q.y,
        prefixes,
        " ".join(str(a) for a in actions),
    )
    return EpisodeResult(
        per_user_prefix=prefixes,
        slots=slots,
        realized_actions=tuple(actions),
        erasure_log=tuple(tuple(bool(x) for x in row) for row in log),
    )
