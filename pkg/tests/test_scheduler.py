import numpy as np
import pytest

from models.geometry import Point2D
from models.scheduling import Action, SchemeKind
from services.baselines.policies import fixed_schedule
from services.errors import InstanceTooLargeError
from services.scheduler.episode import run_episode
from services.scheduler.exact import enumerate_exact, replay_schedule, search_schedules
from services.scheduler.gst import expected_reward, gst_select
from services.scheduler.state import NetworkState

# Two users, L=3, T=4: user 0 misses slot 0, user 1 misses slots 1 and 2
TWO_USER_ERASURES = [
    [True, False, False, False],
    [False, True, True, False],
]
CENTER = Point2D(x=0.0, y=0.0)


def test_first_slot_prefers_the_base_layer():
    state = NetworkState(3, 4, 10)
    pers = [0.1, 0.2, 0.5]
    assert gst_select(state, pers) == Action(gen=1)
    assert expected_reward(state, pers, Action(gen=1)) == pytest.approx(0.9 + 0.8 + 0.5)
    assert expected_reward(state, pers, Action(gen=2)) == 0.0


def test_ties_go_to_the_smallest_generator():
    state = NetworkState(2, 3, 4)
    assert gst_select(state, [1.0, 1.0]) == Action(gen=1)


def test_no_action_after_the_deadline():
    state = NetworkState(1, 2, 2)
    state.t = 2
    with pytest.raises(ValueError):
        gst_select(state, [0.0])


def test_lossless_gst_sends_layers_in_order(small_scenario):
    result = run_episode(
        small_scenario, CENTER, SchemeKind.UARNC, np.random.default_rng(0), pers=[0.0, 0.0]
    )
    assert [str(a) for a in result.realized_actions[:3]] == ["G1", "G2", "G3"]
    assert result.per_user_prefix == (3, 3)
    assert result.throughput == pytest.approx(3 / 4)


def test_forced_erasures_schedule_values():
    rnc = replay_schedule(3, [Action(gen=3)] * 4, TWO_USER_ERASURES)
    assert sum(rnc) == 3
    best = replay_schedule(3, [Action(gen=g) for g in (1, 2, 3, 2)], TWO_USER_ERASURES)
    assert best == [3, 2]


def test_schedule_search_finds_five_of_eight():
    total, actions = search_schedules(3, TWO_USER_ERASURES)
    assert total == 5
    assert len(actions) == 4
    assert sum(replay_schedule(3, actions, TWO_USER_ERASURES)) == 5


def test_online_gst_on_the_forced_pattern(small_scenario):
    result = run_episode(
        small_scenario,
        CENTER,
        SchemeKind.UARNC,
        np.random.default_rng(0),
        erasures=TWO_USER_ERASURES,
        pers=[0.3, 0.3],
    )
    assert result.total_prefix == 4
    assert [list(row) for row in result.erasure_log] == TWO_USER_ERASURES
    rnc = run_episode(
        small_scenario,
        CENTER,
        SchemeKind.RNC,
        np.random.default_rng(0),
        erasures=TWO_USER_ERASURES,
        pers=[0.3, 0.3],
    )
    assert rnc.total_prefix == 3


def test_fixed_schedule_replays_actions(small_scenario):
    actions = [Action(gen=g) for g in (1, 2, 3, 2)]
    result = run_episode(
        small_scenario,
        CENTER,
        fixed_schedule(actions),
        np.random.default_rng(0),
        erasures=TWO_USER_ERASURES,
        pers=[0.3, 0.3],
    )
    assert result.realized_actions == tuple(actions)
    assert result.per_user_prefix == (3, 2)


def test_episode_is_reproducible(small_scenario):
    a = run_episode(small_scenario, CENTER, SchemeKind.UARNC, np.random.default_rng(5))
    b = run_episode(small_scenario, CENTER, SchemeKind.UARNC, np.random.default_rng(5))
    assert a == b


def test_erasure_pattern_shape_is_checked(small_scenario):
    with pytest.raises(ValueError):
        run_episode(
            small_scenario,
            CENTER,
            SchemeKind.UARNC,
            np.random.default_rng(0),
            erasures=[[False] * 4],
        )


def test_explicit_reception_never_beats_generic(small_scenario):
    for seed in range(20):
        generic = run_episode(
            small_scenario, CENTER, SchemeKind.UARNC, np.random.default_rng(seed)
        )
        explicit = run_episode(
            small_scenario,
            CENTER,
            SchemeKind.UARNC,
            np.random.default_rng(seed),
            reception="explicit",
        )
        assert explicit.erasure_log == generic.erasure_log
        assert all(e <= g for e, g in zip(explicit.per_user_prefix, generic.per_user_prefix))


@pytest.mark.parametrize("scheme", list(SchemeKind))
def test_exact_enumeration_extremes(small_scenario, scheme):
    assert enumerate_exact(small_scenario, CENTER, scheme, pers=[0.0, 0.0]) == pytest.approx(
        3 / 4
    )
    assert enumerate_exact(small_scenario, CENTER, scheme, pers=[1.0, 1.0]) == 0.0


def test_exact_enumeration_single_user_single_slot(small_scenario):
    scenario = small_scenario.with_coding(layers=1, slots=1)
    assert enumerate_exact(scenario, CENTER, SchemeKind.UARNC, pers=[0.25, 0.5]) == pytest.approx(
        (0.75 + 0.5) / 2
    )


def test_gst_beats_rnc_in_expectation(small_scenario):
    pers = [0.3, 0.3]
    gst = enumerate_exact(small_scenario, CENTER, SchemeKind.UARNC, pers=pers)
    rnc = enumerate_exact(small_scenario, CENTER, SchemeKind.RNC, pers=pers)
    assert gst > rnc


def test_exact_enumeration_size_limit(small_scenario):
    big = small_scenario.with_coding(layers=3, slots=11)
    with pytest.raises(InstanceTooLargeError):
        enumerate_exact(big, CENTER, SchemeKind.UARNC, pers=[0.1, 0.1])


def test_scheme_ordering_on_a_small_lossy_instance(small_scenario):
    scenario = small_scenario.with_coding(layers=2, slots=3)
    pers = [0.3, 0.3]
    value = {
        scheme: enumerate_exact(scenario, CENTER, scheme, pers=pers) for scheme in SchemeKind
    }
    # hand-computed expectations over all 2^6 erasure patterns
    assert value[SchemeKind.RNC] == pytest.approx(3.136 / 6)
    assert value[SchemeKind.RRS] == pytest.approx(3.094 / 6)
    assert value[SchemeKind.ARQ] == pytest.approx(3.31114 / 6)
    for variant in (SchemeKind.UARNC, SchemeKind.UARNC_FIXED, SchemeKind.UARNC_ES):
        assert value[variant] == pytest.approx(3.31114 / 6)
        assert value[variant] >= value[SchemeKind.ARQ] - 1e-12
        assert value[variant] > value[SchemeKind.RNC] > value[SchemeKind.RRS]


@pytest.mark.slow
@pytest.mark.parametrize("scheme", [SchemeKind.UARNC, SchemeKind.ARQ, SchemeKind.RRS])
def test_layer_aware_schemes_peak_at_the_shortest_deadline(small_scenario, scheme):
    values = [
        enumerate_exact(
            small_scenario.with_coding(layers=4, slots=t), CENTER, scheme, pers=[0.01, 0.01]
        )
        for t in range(4, 11)
    ]
    assert values[0] == max(values)
    assert all(a >= b for a, b in zip(values, values[1:]))


@pytest.mark.slow
def test_rnc_throughput_rises_then_falls_with_the_deadline(small_scenario):
    values = [
        enumerate_exact(
            small_scenario.with_coding(layers=4, slots=t), CENTER, SchemeKind.RNC, pers=[0.1, 0.1]
        )
        for t in range(4, 11)
    ]
    # all-G_4 coding decodes everything or nothing: 4 * P(at least 4 of T arrive) / T
    assert values[0] == pytest.approx(0.9**4)
    assert values[1] == pytest.approx(0.8 * (0.9**5 + 5 * 0.1 * 0.9**4))
    assert int(np.argmax(values)) + 4 == 5
    assert values[0] < values[1]
    assert all(a > b for a, b in zip(values[1:], values[2:]))
