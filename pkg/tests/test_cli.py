import json

import numpy as np
import pytest

from corrqubits.cli import (CSV_HEADER, RunConfig, main, parse_config_text,
                            parse_initial_spec, read_csv)


def run(args):
    return main(list(args))


def test_esd_prints_death_time(capsys):
    assert run(["esd", "--initial", "bell-phi", "--gamma", "1",
                "--big-gamma", "0"]) == 0
    out = capsys.readouterr().out
    printed = float(out.split("death at t =")[1].strip())
    assert printed == pytest.approx(0.22035, abs=1e-4)  # ln(1 + sqrt 2)/4
    assert out.startswith("big_gamma=0: death at t = 0.2203")


def test_negative_gamma_exits_2(capsys):
    assert run(["evolve", "--gamma", "-1"]) == 2
    assert "error" in capsys.readouterr().err


def test_unphysical_correlation_needs_override(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code = run(["sweep", "--initial", "bell-phi", "--gamma", "1",
                "--big-gamma-list", "0,1.2", "-o", str(out)])
    assert code == 2
    code = run(["sweep", "--initial", "bell-phi", "--gamma", "1",
                "--big-gamma-list", "0,1.2", "--allow-unphysical",
                "-o", str(out)])
    assert code == 0
    assert out.exists()


def test_numerical_blowup_exits_3(tmp_path, capsys):
    code = run(["evolve", "--method", "full-rk4", "--gamma", "1",
                "--t-max", "40000", "--dt", "1000", "--grid-points", "5",
                "-o", str(tmp_path / "x.csv")])
    assert code == 3
    assert "numerical failure" in capsys.readouterr().err


def test_fig2_csv_deterministic(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert run(["fig", "2", "--grid-points", "200", "-o", str(a)]) == 0
    assert run(["fig", "2", "--grid-points", "200", "-o", str(b)]) == 0
    ca, cb = a.read_bytes(), b.read_bytes()
    assert ca == cb.replace(b"b.csv", b"a.csv") or ca.replace(b"a.csv", b"b.csv") == cb


def test_csv_format_and_round_trip(tmp_path):
    out = tmp_path / "phi.csv"
    assert run(["evolve", "--initial", "bell-phi", "--gamma", "1",
                "--big-gamma", "0.5", "--t-max", "0.5", "--grid-points", "6",
                "-o", str(out)]) == 0
    text = out.read_text()
    lines = text.splitlines()
    header_idx = next(i for i, l in enumerate(lines) if not l.startswith("#"))
    assert lines[header_idx] == CSV_HEADER
    assert text.endswith("\n")
    meta, cols = read_csv(out)
    assert meta["initial"] == "bell-phi"
    assert meta["command"] == "evolve"
    # t=0 row carries the initial Bell matrix
    assert cols["concurrence"][0] == 1.0
    assert cols["rho14_re"][0] == 0.5
    assert cols["rho22"][0] == 0.0
    # floats round-trip exactly through the 17-digit format
    assert run(["evolve", "--initial", "bell-phi", "--gamma", "1",
                "--big-gamma", "0.5", "--t-max", "0.5", "--grid-points", "6",
                "-o", str(tmp_path / "phi2.csv")]) == 0
    meta2, cols2 = read_csv(tmp_path / "phi2.csv")
    for key in cols:
        if key == "method":
            continue
        assert np.array_equal(cols[key], cols2[key])


def test_csv_concurrence_recomputable_from_state_columns(tmp_path):
    out = tmp_path / "w.csv"
    assert run(["sweep", "--initial", "bell-psi", "--gamma", "1",
                "--big-gamma-list", "0,0.5,1", "--t-max", "1",
                "--grid-points", "64", "-o", str(out)]) == 0
    _, cols = read_csv(out)
    bz = np.abs(cols["rho23_re"] + 1j * cols["rho23_im"]) - np.sqrt(
        np.clip(cols["rho11"] * cols["rho44"], 0, None))
    bw = np.abs(cols["rho14_re"] + 1j * cols["rho14_im"]) - np.sqrt(
        np.clip(cols["rho22"] * cols["rho33"], 0, None))
    c = 2 * np.maximum(0, np.maximum(bz, bw))
    assert np.max(np.abs(c - cols["concurrence"])) <= 1e-10
    assert np.max(np.abs(bz - cols["branch_z"])) <= 1e-12
    assert np.max(np.abs(bw - cols["branch_w"])) <= 1e-12


def test_werner_state_export(tmp_path):
    out = tmp_path / "werner.csv"
    assert run(["evolve", "--initial", "x-state:0.375,0.125,0.125,0.375,0,0.25",
                "--gamma", "1", "--big-gamma", "0", "--t-max", "0.1",
                "--grid-points", "2", "-o", str(out)]) == 0
    _, cols = read_csv(out)
    assert cols["concurrence"][0] == pytest.approx(0.25, abs=1e-12)


def test_initial_state_file(tmp_path):
    spec = tmp_path / "state.cfg"
    spec.write_text("a = 0.5\nb = 0\nc = 0\nd = 0.5\nz = 0\nw = 0.5\n")
    x = parse_initial_spec(str(spec))
    assert x.w == 0.5
    with pytest.raises(Exception):
        parse_initial_spec("no-such-state")


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("initial = bell-phi\ngamma = 1\nbig_gamma = 0\n"
                   "t_max = 1\ngrid_points = 50\n")
    out = tmp_path / "o.csv"
    assert run(["evolve", "--config", str(cfg), "-o", str(out)]) == 0
    meta, _ = read_csv(out)
    assert meta["big_gamma"] == "0"
    # flag overrides file
    out2 = tmp_path / "o2.csv"
    assert run(["evolve", "--config", str(cfg), "--big-gamma", "0.5",
                "-o", str(out2)]) == 0
    meta2, _ = read_csv(out2)
    assert float(meta2["big_gamma"]) == 0.5


def test_run_config_round_trip():
    cfg = RunConfig(command="sweep", initial="bell-psi", gamma=1.25,
                    big_gamma=0.3, omega=2.0, method="secular-rk4",
                    t_max=1.5, dt=5e-4, grid_points=777,
                    big_gamma_list=(0.0, 0.25), seed=99, n_traj=123,
                    convention="calibrated", allow_unphysical=True,
                    out="x.csv")
    assert RunConfig.from_config_text(cfg.to_config_text()) == cfg


def test_parse_config_rejects_unknown_key():
    with pytest.raises(Exception, match="unknown config key"):
        parse_config_text("gamma = 1\nbogus = 2\n")


def test_compare_json_output(tmp_path):
    out = tmp_path / "cmp.json"
    assert run(["compare", "--initial", "bell-phi", "--gamma", "1",
                "--big-gamma", "0.5", "--t-max", "1", "--grid-points", "21",
                "--methods", "analytic,secular-rk4", "-o", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["methods"] == ["analytic", "secular-rk4"]
    pair = payload["pairs"][0]
    assert set(pair) == {"method_pair", "max_abs_deviation", "time_of_max"}
    assert pair["max_abs_deviation"] <= 1e-8


def test_bad_initial_spec_exits_2(capsys):
    assert run(["evolve", "--initial", "x-state:1,2,3"]) == 2
    assert run(["evolve", "--initial", "x-state:0.5,0.5,0.5,0.5,0,0"]) == 2


def test_trajectories_method_csv(tmp_path):
    out = tmp_path / "mc.csv"
    assert run(["evolve", "--initial", "bell-phi", "--method", "trajectories",
                "--gamma", "1", "--big-gamma", "0.5", "--t-max", "0.2",
                "--grid-points", "5", "--dt", "1e-3", "--n-traj", "200",
                "--seed", "4", "-o", str(out)]) == 0
    meta, cols = read_csv(out)
    assert meta["method"] == "trajectories"
    assert cols["concurrence"][0] == pytest.approx(1.0, abs=1e-12)
