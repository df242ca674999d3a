"""Expected one-step reward and greedy generator selection."""

from typing import Sequence

from models.scheduling import Action

from .state import NetworkState

# Rewards closer than this count as a tie
TIE_TOLERANCE = 1e-12


def expected_reward(state: NetworkState, pers: Sequence[float], action: Action) -> float:
    """Sum over users of (1 - p_i) times the prefix gain of receiving `action`.

    A lost packet leaves the state unchanged and contributes nothing.
    """
    reward = 0.0
    for user, p in zip(state.per_user, pers):
        if p >= 1.0:
            continue
        gain = user.prefix_with(action) - user.prefix()
        if gain:
            reward += (1.0 - p) * gain
    return reward


def gst_select(state: NetworkState, pers: Sequence[float]) -> Action:
    """Generator with the largest expected reward; ties go to the smallest index."""
    if state.t >= state.slots:
        raise ValueError(f"No slot left to schedule (t={state.t}, T={state.slots})")
    best = Action(gen=1)
    best_reward = expected_reward(state, pers, best)
    for gen in range(2, state.layers + 1):
        action = Action(gen=gen)
        reward = expected_reward(state, pers, action)
        if reward > best_reward + TIE_TOLERANCE:
            best, best_reward = action, reward
    return best
