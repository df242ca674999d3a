import numpy as np
import pytest

from models.geometry import Point2D
from models.scheduling import Action, SchemeKind
from services.baselines.policies import (
    ArqState,
    arq_policy,
    rnc_policy,
    rrs_policy,
    scheduler_for,
)
from services.baselines.svc import useful_packets
from services.scheduler.episode import play_slot, run_episode
from services.scheduler.state import NetworkState

CENTER = Point2D(x=0.0, y=0.0)


@pytest.mark.parametrize(
    "held,expected",
    [(set(), 0), ({1}, 1), ({2, 3}, 0), ({1, 2, 4}, 2), ({1, 2, 3, 4}, 4)],
)
def test_useful_packets_counts_the_contiguous_prefix(held, expected):
    assert useful_packets(held) == expected


def test_rnc_always_codes_over_every_layer():
    state = NetworkState(2, 4, 6)
    for _ in range(6):
        assert rnc_policy(state) == Action(gen=4)
        play_slot(state, rnc_policy(state), [True, False])


def test_rrs_cycles_regardless_of_feedback():
    state = NetworkState(1, 3, 7)
    sent = []
    for _ in range(7):
        action = rrs_policy(state)
        sent.append(action.gen)
        play_slot(state, action, [False])
    assert sent == [1, 2, 3, 1, 2, 3, 1]


def test_arq_repeats_until_everyone_holds_the_packet():
    state = NetworkState(2, 3, 6)
    arq_state = ArqState()
    sent = []
    for received in ([True, False], [False, True], [True, True], [True, True]):
        action = arq_policy(state, arq_state)
        sent.append(str(action))
        play_slot(state, action, received)
    assert sent == ["a1", "a1", "a2", "a3"]
    assert arq_state.target == 3


def test_arq_idles_on_the_last_packet():
    state = NetworkState(1, 2, 4)
    for _ in range(4):
        action = scheduler_for(SchemeKind.ARQ)(state, [0.0])
        play_slot(state, action, [True])
    assert action == Action(gen=2, uncoded=True)
    assert state.prefixes() == [2]


def test_rrs_prefix_breaks_on_a_missing_layer(small_scenario):
    erasures = [[False, True, False, False], [False, False, False, False]]
    result = run_episode(
        small_scenario,
        CENTER,
        SchemeKind.RRS,
        np.random.default_rng(0),
        erasures=erasures,
        pers=[0.5, 0.5],
    )
    # user 0 misses alpha_2 and only alpha_1 comes round again
    assert result.per_user_prefix == (1, 3)


@pytest.mark.parametrize("scheme", [SchemeKind.RNC, SchemeKind.ARQ, SchemeKind.RRS])
def test_lossless_baselines_deliver_every_layer(small_scenario, scheme):
    result = run_episode(
        small_scenario, CENTER, scheme, np.random.default_rng(1), pers=[0.0, 0.0]
    )
    assert result.per_user_prefix == (3, 3)
