import numpy as np
import pytest

from ringjsa import gridio
from ringjsa.cli import main

FAST_CFG = """\
pump.fwhm_pm = 420
pump.eta = 0.6
pump.delta_tau_ps = 20
ring.q = 25000
grid.n = 65
"""


@pytest.fixture
def fast_config(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(FAST_CFG)
    return path


def parse_kv(stdout):
    pairs = {}
    for line in stdout.strip().splitlines():
        key, value = line.split("=", 1)
        pairs[key] = float(value)
    return pairs


class TestSimulate:
    def test_reports_metrics(self, fast_config, capsys):
        assert main(["simulate", "--config", str(fast_config)]) == 0
        values = parse_kv(capsys.readouterr().out)
        assert set(values) == {
            "purity_true",
            "purity_flat",
            "purity_error",
            "relative_brightness",
        }
        assert values["purity_flat"] >= 0.96
        assert values["relative_brightness"] < 1.0

    def test_writes_outputs(self, fast_config, tmp_path, capsys):
        jsa_prefix = tmp_path / "jsa"
        jsi_path = tmp_path / "jsi.csv"
        assert (
            main(
                [
                    "simulate",
                    "--config",
                    str(fast_config),
                    "--jsa-out",
                    str(jsa_prefix),
                    "--jsi-out",
                    str(jsi_path),
                ]
            )
            == 0
        )
        capsys.readouterr()
        assert jsi_path.exists()
        _, _, re = gridio.read_grid_csv(str(jsa_prefix) + ".re.csv")
        _, _, im = gridio.read_grid_csv(str(jsa_prefix) + ".im.csv")
        _, _, jsi = gridio.read_grid_csv(jsi_path)
        np.testing.assert_allclose(re**2 + im**2, jsi, atol=1e-7 * jsi.max())

    def test_byte_identical_reruns(self, fast_config, tmp_path, capsys):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["simulate", "--config", str(fast_config), "--jsi-out", str(out1)])
        first = capsys.readouterr().out
        main(["simulate", "--config", str(fast_config), "--jsi-out", str(out2)])
        second = capsys.readouterr().out
        assert first == second
        assert out1.read_bytes() == out2.read_bytes()


class TestAnalyze:
    def test_round_trip_matches_simulate(self, fast_config, tmp_path, capsys):
        jsi_path = tmp_path / "jsi.csv"
        main(["simulate", "--config", str(fast_config), "--jsi-out", str(jsi_path)])
        simulated = parse_kv(capsys.readouterr().out)

        out_csv = tmp_path / "analysis.csv"
        assert main(["analyze", "--jsi", str(jsi_path), "--out", str(out_csv)]) == 0
        analyzed = parse_kv(capsys.readouterr().out)
        assert analyzed["purity_flat"] == pytest.approx(simulated["purity_flat"], abs=1e-6)

        header, row = out_csv.read_text().splitlines()
        assert header == "purity_flat,purity_error"
        assert float(row.split(",")[0]) == pytest.approx(simulated["purity_flat"], abs=1e-6)


class TestSweep:
    def test_degenerate_single_point_sweep(self, fast_config, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        assert (
            main(
                [
                    "sweep",
                    "--config",
                    str(fast_config),
                    "--eta",
                    "1:1:1",
                    "--dtau-ps",
                    "0:0:1",
                    "--out",
                    str(out),
                ]
            )
            == 0
        )
        capsys.readouterr()
        rows = gridio.read_sweep_table(out)
        assert len(rows) == 1
        assert 0.91 <= rows[0]["purity_flat"] <= 0.94
        assert rows[0]["relative_brightness"] == 1.0

    def test_map_covers_grid(self, fast_config, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        main(
            [
                "sweep",
                "--config",
                str(fast_config),
                "--eta",
                "0.5:0.7:2",
                "--dtau-ps",
                "15:25:3",
                "--out",
                str(out),
            ]
        )
        capsys.readouterr()
        rows = gridio.read_sweep_table(out)
        assert len(rows) == 6
        assert {round(row["eta"], 2) for row in rows} == {0.5, 0.7}

    def test_byte_identical_reruns(self, fast_config, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            main(
                [
                    "sweep",
                    "--config",
                    str(fast_config),
                    "--eta",
                    "0.4:0.8:2",
                    "--dtau-ps",
                    "10:30:2",
                    "--out",
                    str(out),
                ]
            )
            capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()


class TestLimit:
    def test_limit_table(self, fast_config, tmp_path, capsys):
        out = tmp_path / "limit.csv"
        assert (
            main(
                [
                    "limit",
                    "--config",
                    str(fast_config),
                    "--ratios",
                    "0.5,1,10",
                    "--out",
                    str(out),
                ]
            )
            == 0
        )
        capsys.readouterr()
        lines = out.read_text().splitlines()
        assert lines[0] == "bandwidth_ratio,purity"
        purities = [float(line.split(",")[1]) for line in lines[1:]]
        assert purities == sorted(purities)


class TestOptimizeAndQseries:
    def test_optimize_writes_best_point(self, fast_config, tmp_path, capsys):
        out = tmp_path / "best.csv"
        assert main(["optimize", "--config", str(fast_config), "--out", str(out)]) == 0
        capsys.readouterr()
        rows = gridio.read_sweep_table(out)
        assert len(rows) == 1
        assert rows[0]["purity_flat"] >= 0.97

    def test_qseries_trend(self, fast_config, tmp_path, capsys):
        out = tmp_path / "qseries.csv"
        assert (
            main(
                [
                    "qseries",
                    "--config",
                    str(fast_config),
                    "--q",
                    "9200,19600",
                    "--out",
                    str(out),
                ]
            )
            == 0
        )
        capsys.readouterr()
        rows = gridio.read_sweep_table(out)
        assert len(rows) == 2
        assert rows[0]["purity_flat"] <= rows[1]["purity_flat"]


class TestErrorContract:
    @pytest.mark.parametrize(
        "argv",
        [
            ["simulate", "--config", "does-not-exist.cfg"],
            ["sweep", "--config", "does-not-exist.cfg", "--eta", "1:1:1", "--dtau-ps", "0:0:1", "--out", "x.csv"],
            ["analyze", "--jsi", "does-not-exist.csv", "--out", "x.csv"],
            ["simulate"],
            ["frobnicate"],
        ],
    )
    def test_failures_exit_nonzero_with_one_error_line(self, argv, capsys):
        code = main(argv)
        captured = capsys.readouterr()
        assert code != 0
        lines = captured.err.strip().splitlines()
        assert len(lines) == 1
        assert lines[0].startswith("error:")

    def test_bad_range_names_flag(self, fast_config, tmp_path, capsys):
        code = main(
            [
                "sweep",
                "--config",
                str(fast_config),
                "--eta",
                "1:2",
                "--dtau-ps",
                "0:0:1",
                "--out",
                str(tmp_path / "x.csv"),
            ]
        )
        captured = capsys.readouterr()
        assert code != 0
        assert "--eta" in captured.err

    def test_bad_config_value_reported(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("pump.fwhm_pm = 420\nring.q = 25000\npump.eta = 1.5\n")
        code = main(["simulate", "--config", str(cfg)])
        captured = capsys.readouterr()
        assert code != 0
        assert captured.err.startswith("error:")
        assert "pump.eta" in captured.err
