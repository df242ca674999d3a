import asyncio
import json

import pandas as pd
import pytest

from app.cli.service import EXIT_INFEASIBLE, EXIT_OK, EXIT_VALIDATION, CliService

HEADER = "scheme,L,T,K,qx,qy,mean_throughput,ci95_lo,ci95_hi,runs,seed,feasible"

SMALL = {
    "scenario": {
        "layout": "explicit",
        "users": [[-40, 10], [60, -30]],
        "area": {"xmin": -100, "xmax": 100, "ymin": -100, "ymax": 100},
    },
    "radio": {"sigma2_db": -130},
    "coding": {"L": 2, "T": 3},
    "fairness": {"l_min": 1, "p_th": 0.0},
    "pso": {"sizepop": 4, "maxg": 3},
    "monte_carlo": {"runs": 6},
    "grid_step_m": 100,
}


def _config(tmp_path, **sections) -> str:
    data = json.loads(json.dumps(SMALL))
    for key, value in sections.items():
        data[key] = {**data.get(key, {}), **value} if isinstance(value, dict) else value
    path = tmp_path / "c.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def _run(*argv) -> int:
    return asyncio.run(CliService().run(list(argv)))


def test_simulate_writes_one_row(tmp_path):
    out = tmp_path / "r.csv"
    code = _run("--config", _config(tmp_path), "--seed", "42", "--out", str(out), "simulate")
    assert code == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == HEADER
    assert len(lines) == 2
    assert lines[1].startswith("uarnc,2,3,2,")
    record = json.loads((tmp_path / "r.config.json").read_text(encoding="utf-8"))
    assert record["master_seed"] == 42
    assert record["config"]["monte_carlo"]["master_seed"] == 42


def test_simulate_is_byte_identical_on_rerun(tmp_path):
    config = _config(tmp_path)
    outputs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        assert _run("--config", config, "--out", str(out), "simulate", "--scheme", "arq") == EXIT_OK
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_runs_override_and_json_format(tmp_path):
    out = tmp_path / "r.json"
    code = _run(
        "--config", _config(tmp_path), "--runs", "3", "--format", "json", "--out", str(out),
        "simulate", "--scheme", "rrs", "--qx", "10", "--qy", "-10",
    )
    assert code == EXIT_OK
    rows = json.loads(out.read_text(encoding="utf-8"))["rows"]
    assert rows[0]["runs"] == 3
    assert (rows[0]["qx"], rows[0]["qy"]) == (10.0, -10.0)


@pytest.mark.parametrize("method", ["grid", "pso"])
def test_place_writes_the_placement_trace(tmp_path, method):
    out = tmp_path / f"{method}.csv"
    code = _run("--config", _config(tmp_path), "--out", str(out), "place", "--method", method)
    assert code == EXIT_OK
    placement = json.loads((tmp_path / f"{method}.placement.json").read_text(encoding="utf-8"))
    qx, qy = placement["q"]
    assert -100 <= qx <= 100 and -100 <= qy <= 100
    fits = [r["gbest_fit"] for r in placement["trace"]]
    assert fits == sorted(fits)
    frame = pd.read_csv(out)
    assert list(frame["scheme"]) == ["uarnc"]


def test_place_reports_infeasible_problems(tmp_path):
    config = _config(tmp_path, fairness={"p_th": 1.0})
    assert _run("--config", config, "--out", str(tmp_path / "x.csv"), "place") == EXIT_INFEASIBLE


def test_invalid_config_exits_with_validation_code(tmp_path):
    config = _config(tmp_path, coding={"L": 4, "T": 3})
    assert _run("--config", config, "simulate") == EXIT_VALIDATION


def test_unknown_arguments_exit_with_validation_code():
    assert _run("simulate", "--bogus") == EXIT_VALIDATION


def test_sweep_rows_follow_values_then_schemes(tmp_path):
    out = tmp_path / "s.csv"
    code = _run(
        "--config", _config(tmp_path), "--out", str(out),
        "sweep", "--param", "T", "--values", "2", "3", "--schemes", "uarnc", "rnc",
    )
    assert code == EXIT_OK
    frame = pd.read_csv(out)
    assert list(zip(frame["T"], frame["scheme"])) == [
        (2, "uarnc"), (2, "rnc"), (3, "uarnc"), (3, "rnc"),
    ]


def test_sweep_domain_errors_exit_with_validation_code(tmp_path):
    code = _run(
        "--config", _config(tmp_path), "--out", str(tmp_path / "s.csv"),
        "sweep", "--param", "T", "--values", "1",
    )
    assert code == EXIT_VALIDATION


def test_fig4_preset_schema(tmp_path):
    out = tmp_path / "fig4.csv"
    code = _run("--config", _config(tmp_path), "--runs", "2", "--out", str(out), "preset", "fig4")
    assert code == EXIT_OK
    frame = pd.read_csv(out)
    assert ",".join(frame.columns) == HEADER
    assert set(frame["L"]) == {4}
    assert sorted(set(frame["T"])) == list(range(4, 11))
    assert list(frame["scheme"][:4]) == ["uarnc", "rnc", "arq", "rrs"]
    assert len(frame) == 28


def test_fig2_preset_compares_placements(tmp_path):
    out = tmp_path / "fig2.csv"
    clusters = [
        {"center": [-50, 40], "sigma": 20, "count": 3},
        {"center": [60, -50], "sigma": 20, "count": 2},
    ]
    config = _config(tmp_path, scenario={"clusters": clusters})
    code = _run("--config", config, "--runs", "2", "--out", str(out), "preset", "fig2-clustered")
    assert code == EXIT_OK
    frame = pd.read_csv(out)
    assert list(frame["scheme"]) == ["uarnc", "uarnc-fixed"]
    assert (frame["qx"][1], frame["qy"][1]) == (0.0, 0.0)
    assert (tmp_path / "fig2.placement.json").exists()


def test_global_flags_after_the_subcommand(tmp_path):
    out = tmp_path / "r.csv"
    code = _run(
        "simulate", "--config", _config(tmp_path), "--scheme", "uarnc", "--seed", "42",
        "--out", str(out),
    )
    assert code == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == HEADER
    assert len(lines) == 2
    record = json.loads((tmp_path / "r.config.json").read_text(encoding="utf-8"))
    assert record["master_seed"] == 42


def test_subcommand_flags_override_leading_ones(tmp_path):
    out = tmp_path / "r.csv"
    code = _run(
        "--seed", "1", "--config", _config(tmp_path), "--out", str(out),
        "simulate", "--seed", "42",
    )
    assert code == EXIT_OK
    record = json.loads((tmp_path / "r.config.json").read_text(encoding="utf-8"))
    assert record["master_seed"] == 42


def test_place_accepts_trailing_config(tmp_path):
    out = tmp_path / "g.csv"
    code = _run(
        "place", "--method", "grid", "--grid-step", "50", "--config", _config(tmp_path),
        "--out", str(out),
    )
    assert code == EXIT_OK
    placement = json.loads((tmp_path / "g.placement.json").read_text(encoding="utf-8"))
    assert placement["evaluations"] == 25


def test_fig3_preset_places_every_uarnc_series(tmp_path):
    out = tmp_path / "fig3.csv"
    code = _run("preset", "fig3", "--config", _config(tmp_path), "--runs", "2", "--out", str(out))
    assert code == EXIT_OK
    frame = pd.read_csv(out)
    assert sorted(set(frame["L"])) == list(range(1, 9))
    assert set(frame["T"]) == {10}
    assert list(frame["scheme"][:6]) == ["uarnc", "uarnc-es", "uarnc-fixed", "rnc", "arq", "rrs"]
    assert len(frame) == 48
    fixed = frame[frame["scheme"] == "uarnc-fixed"]
    assert (fixed["qx"] == 0.0).all() and (fixed["qy"] == 0.0).all()
    lattice = [-100.0, 0.0, 100.0]
    es = frame[frame["scheme"] == "uarnc-es"]
    assert es["qx"].isin(lattice).all() and es["qy"].isin(lattice).all()
