"""Command-line interface: configuration schema, drive-cycle I/O, command
outputs, exit codes, and byte determinism."""

import json

import numpy as np
import pytest

from celltherm.cli import (
    DEFAULTS,
    MARKET_CELL_RATIOS,
    load_config,
    main,
    solve_constant_volume,
)
from celltherm.core import HeatProfile, cell_volume, CellSpec
from celltherm.exceptions import ConfigError
from celltherm.profiles import (
    emit_drive_cycle,
    ingest_drive_cycle,
    pulse_train,
    random_drive,
)

FAST_CFG = {
    "schema_version": 1,
    "orders": [1, 4],
    "dt_s": 2.0,
    "horizon_s": 60.0,
    "fd": {"n_r": 20, "n_z": 20, "dt_s": 1.0},
    "grid": {"n_r": 15, "n_z": 15},
    "metrics_stride": 5,
    "scenarios": ["SC"],
    "control": {"c_rates": [1.0]},
    "sweep": {"ratios": [2.0, 5.0]},
    "heat": {"kind": "constant_q", "q_W_per_m3": 50000.0},
    "timing": {"enabled": False},
}


def _write_cfg(tmp_path, extra=None, name="cfg.json"):
    cfg = json.loads(json.dumps(FAST_CFG))
    cfg.update(extra or {})
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return path


class TestConfig:
    def test_defaults_load_without_file(self):
        cfg = load_config(None)
        assert cfg["orders"] == DEFAULTS["orders"]

    def test_unknown_top_level_key_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"no_such_key": 1}))
        with pytest.raises(ConfigError, match="no_such_key"):
            load_config(path)

    def test_unknown_nested_key_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"fd": {"n_r": 32, "mesh": "auto"}}))
        with pytest.raises(ConfigError, match="mesh"):
            load_config(path)

    def test_empty_orders_rejected(self, tmp_path):
        path = _write_cfg(tmp_path, {"orders": []})
        with pytest.raises(ConfigError):
            load_config(path)

    def test_non_square_order_rejected(self, tmp_path):
        path = _write_cfg(tmp_path, {"orders": [5]})
        with pytest.raises(ConfigError, match="square"):
            load_config(path)

    def test_unknown_scenario_rejected(self, tmp_path):
        path = _write_cfg(tmp_path, {"scenario": "ZZZ"})
        with pytest.raises(ConfigError):
            load_config(path)

    def test_schema_version_checked(self, tmp_path):
        path = _write_cfg(tmp_path, {"schema_version": 99})
        with pytest.raises(ConfigError, match="schema_version"):
            load_config(path)

    def test_malformed_json_reports_line(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{\n  broken\n}")
        with pytest.raises(ConfigError, match="line"):
            load_config(path)


class TestDriveCycleIO:
    def test_two_column_constant(self, tmp_path):
        path = tmp_path / "q.csv"
        path.write_text("t_s,q_Wm3\n0.0,5.0\n10.0,5.0\n")
        profile = ingest_drive_cycle(path)
        assert profile.kind == "volumetric_q"
        assert np.all(profile.values == 5.0)

    def test_four_column_zero_current(self, tmp_path):
        path = tmp_path / "ivo.csv"
        path.write_text("t_s,I_A,V_V,Vocv_V\n0.0,0.0,3.3,3.3\n5.0,0.0,3.2,3.3\n")
        profile = ingest_drive_cycle(path, cell_volume=6.27e-4)
        assert profile.kind == "volumetric_q"
        assert np.all(profile.values == 0.0)

    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(2)
        original = HeatProfile(np.arange(8) * 1.7,
                               rng.uniform(-1e4, 1e5, size=8))
        path = tmp_path / "cycle.csv"
        emit_drive_cycle(original, path)
        back = ingest_drive_cycle(path)
        assert np.allclose(back.times, original.times, rtol=1e-12, atol=0)
        assert np.allclose(back.values, original.values, rtol=1e-12, atol=0)

    def test_electrical_round_trip(self, tmp_path):
        profile = random_drive(90.0, horizon=30.0, seed=4, step=5.0)
        path = tmp_path / "drive.csv"
        emit_drive_cycle(profile, path)
        back = ingest_drive_cycle(path)
        assert back.kind == "electrical_ivo"
        assert np.allclose(back.values, profile.values, rtol=1e-12, atol=0)

    def test_malformed_row_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("t_s,q_Wm3\n0.0,1.0\nnot,a,row\n")
        with pytest.raises(ConfigError, match="line 3"):
            ingest_drive_cycle(path)

    def test_non_numeric_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("t_s,q_Wm3\n0.0,xyz\n")
        with pytest.raises(ConfigError, match="line 2"):
            ingest_drive_cycle(path)

    def test_non_monotone_time_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("t_s,q_Wm3\n0.0,1.0\n2.0,1.0\n1.0,1.0\n")
        with pytest.raises(ConfigError, match="increasing"):
            ingest_drive_cycle(path)

    def test_wrong_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("time,heat\n0.0,1.0\n")
        with pytest.raises(ConfigError, match="header"):
            ingest_drive_cycle(path)


class TestSyntheticProfiles:
    def test_pulse_train_edges(self):
        p = pulse_train(100.0, period=10.0, duty=0.3, horizon=25.0)
        assert p.times[0] == 0.0 and p.values[0] == 100.0
        assert 3.0 in p.times and 10.0 in p.times
        # zero-order hold semantics: value drops at t = duty * period
        i = list(p.times).index(3.0)
        assert p.values[i] == 0.0

    def test_random_drive_reproducible(self):
        a = random_drive(90.0, horizon=50.0, seed=11)
        b = random_drive(90.0, horizon=50.0, seed=11)
        c = random_drive(90.0, horizon=50.0, seed=12)
        assert np.array_equal(a.values, b.values)
        assert not np.array_equal(a.values, c.values)

    def test_random_drive_peak_current(self):
        p = random_drive(90.0, horizon=200.0, seed=0)
        assert np.abs(p.values[:, 0]).max() == pytest.approx(90.0)

    def test_random_drive_scale_multiplies_heat(self):
        vol = 6.27e-4
        q1 = random_drive(90.0, 100.0, seed=3, scale=1.0).to_volumetric(vol)
        q2 = random_drive(90.0, 100.0, seed=3, scale=2.0).to_volumetric(vol)
        assert np.allclose(q2.values, 2.0 * q1.values, rtol=1e-12)


class TestCommands:
    def test_simulate_outputs(self, tmp_path):
        path = _write_cfg(tmp_path, {"out_dir": str(tmp_path / "out")})
        assert main(["simulate", "--config", str(path)]) == 0
        trace = (tmp_path / "out/simulate/trace_O1.csv").read_text().splitlines()
        assert trace[0] == "t_s,T_surface_C,T_core_C,T_top_C,T_bottom_C"
        assert len(trace) == 32  # header + 31 steps
        summary = json.loads((tmp_path / "out/simulate/summary.json").read_text())
        assert summary["provenance"]["seed"] == 0
        assert "config_sha256" in summary["provenance"]

    def test_validate_errors_decrease(self, tmp_path):
        path = _write_cfg(tmp_path, {"out_dir": str(tmp_path / "out")})
        assert main(["validate", "--config", str(path)]) == 0
        rows = (tmp_path / "out/validate/errors.csv").read_text().splitlines()[1:]
        errs = [float(r.split(",")[2]) for r in rows]
        assert errs[1] < errs[0]

    def test_compare_tec_rejects_pouch(self, tmp_path):
        path = _write_cfg(tmp_path, {
            "cell": {"shape": "pouch", "L": 0.2, "D": 0.1, "rho": 2118.0,
                     "cp": 795.0, "k_r": 0.9, "k_z": 30.0},
            "out_dir": str(tmp_path / "out")})
        assert main(["compare-tec", "--config", str(path)]) == 4

    def test_bad_config_exit_code(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"orders": [3]}))
        assert main(["simulate", "--config", str(path)]) == 2

    def test_missing_config_exit_code(self, tmp_path):
        assert main(["simulate", "--config", str(tmp_path / "nope.json")]) == 2

    def test_orders_override(self, tmp_path):
        path = _write_cfg(tmp_path, {"out_dir": str(tmp_path / "out")})
        assert main(["simulate", "--config", str(path), "--orders", "9"]) == 0
        assert (tmp_path / "out/simulate/trace_O9.csv").exists()

    def test_sweep_constant_volume_and_markers(self, tmp_path):
        path = _write_cfg(tmp_path, {"out_dir": str(tmp_path / "out")})
        assert main(["sweep-geometry", "--config", str(path)]) == 0
        rows = (tmp_path / "out/sweep-geometry/sweep.csv").read_text().splitlines()[1:]
        base = cell_volume(CellSpec(shape="cylindrical", **{
            k: v for k, v in DEFAULTS["cell"].items() if k != "shape"}))
        for row in rows:
            vol = float(row.split(",")[3])
            assert vol == pytest.approx(base, rel=1e-10)
        summary = json.loads(
            (tmp_path / "out/sweep-geometry/summary.json").read_text())
        assert summary["market_cell_ratios"] == MARKET_CELL_RATIOS

    def test_control_trace_columns(self, tmp_path):
        path = _write_cfg(tmp_path, {"out_dir": str(tmp_path / "out"),
                                     "horizon_s": 40.0})
        assert main(["control", "--config", str(path)]) == 0
        header = (tmp_path / "out/control/trace_SC_1C.csv").read_text().splitlines()[0]
        assert header == ("t_s,T_mean_C,T_hat_mean_C,u_s_W_per_m2,"
                          "u_t_W_per_m2,u_b_W_per_m2,dTr_mean_K_per_m,"
                          "dTz_mean_K_per_m")

    def test_scenarios_merits_table(self, tmp_path):
        path = _write_cfg(tmp_path, {"out_dir": str(tmp_path / "out"),
                                     "orders": [4]})
        assert main(["scenarios", "--config", str(path)]) == 0
        rows = (tmp_path / "out/scenarios/merits.csv").read_text().splitlines()
        assert len(rows) == 6
        assert rows[0].startswith("scenario,T_mean_C")


class TestDeterminism:
    def test_commands_byte_identical_on_rerun(self, tmp_path):
        cfg_path = _write_cfg(tmp_path, {
            "out_dir": str(tmp_path / "out"),
            "heat": {"kind": "random_drive", "peak_current_A": 60.0},
            "horizon_s": 40.0,
        })
        for command in ("simulate", "validate", "scenarios"):
            assert main([command, "--config", str(cfg_path), "--seed", "3"]) == 0
            first = {
                f.relative_to(tmp_path): f.read_bytes()
                for f in (tmp_path / "out").rglob("*")
                if f.suffix in (".csv", ".json")
            }
            assert main([command, "--config", str(cfg_path), "--seed", "3"]) == 0
            for rel, blob in first.items():
                assert (tmp_path / rel).read_bytes() == blob, rel


class TestConstantVolume:
    def test_ratio_reproduces_paper_cell(self):
        spec = CellSpec(shape="cylindrical", **{
            k: v for k, v in DEFAULTS["cell"].items() if k != "shape"})
        ratio = spec.L / spec.R_out
        solved = solve_constant_volume(cell_volume(spec), ratio, spec.R_in)
        assert solved is not None
        length, r_out = solved
        assert length == pytest.approx(spec.L, rel=1e-12)
        assert r_out == pytest.approx(spec.R_out, rel=1e-12)

    def test_tiny_volume_stays_above_inner_radius(self):
        # the cubic always has one root above R_in for positive volume; a
        # vanishing volume drives R_out down to R_in from above
        solved = solve_constant_volume(1e-12, 8.0, 0.05)
        assert solved is not None
        _, r_out = solved
        assert 0.05 < r_out < 0.0501
