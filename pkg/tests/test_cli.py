import json

import pytest

from aclandau import cli


def run(argv, tmp_path, name="out"):
    out = tmp_path / name
    code = cli.main(argv + ["--out", str(out)])
    return code, out


def test_spectrum_small_grid(tmp_path, capsys):
    code, out = run(["spectrum", "--kind", "symmetric", "--sigma", "-1", "--L", "8", "--h", "0.5"], tmp_path)
    assert code == 0
    data = json.loads((out / "spectrum.json").read_text())
    assert data["status"] == "ok"
    assert data["config"]["kind"] == "symmetric"
    assert data["conditions"]["condition_iii"]
    means = [c["mean"] for c in data["clusters"]]
    assert means[0] == pytest.approx(0.0, abs=0.05)
    clusters = json.loads((out / "clusters.json").read_text())
    assert clusters["clusters"] == data["clusters"]
    lines = (out / "eigenvalues.csv").read_text().splitlines()
    assert lines[0] == "index,value" and len(lines) == len(data["eigenvalues"]) + 1


def test_spectrum_deterministic(tmp_path):
    argv = ["spectrum", "--kind", "plate", "--sigma", "1", "--L", "8", "--h", "0.5"]
    _, a = run(argv, tmp_path, "a")
    _, b = run(argv, tmp_path, "b")
    for name in ("spectrum.json", "clusters.json", "eigenvalues.csv"):
        ra, rb = (a / name).read_bytes(), (b / name).read_bytes()
        assert ra.replace(b"/a", b"/b") == rb


def test_spectrum_from_config_file(tmp_path):
    cfg = tmp_path / "sl.cfg"
    cfg.write_text("kind = standard-landau\nsigma = 1\nL = 8\nh = 0.5\nformats = json\n")
    code, out = run(["spectrum", "--config", str(cfg)], tmp_path)
    assert code == 0
    data = json.loads((out / "spectrum.json").read_text())
    assert data["clusters"][0]["expected"] == 0.5
    assert not (out / "eigenvalues.csv").exists()


def test_free_box_table(tmp_path, capsys):
    code, out = run(["spectrum", "--kind", "free", "--L", "3.1415926535", "--n", "33"], tmp_path)
    assert code == 0
    assert "analytic" in capsys.readouterr().out
    data = json.loads((out / "spectrum.json").read_text())
    assert len(data["box"]["analytic"]) == len(data["eigenvalues"])


def test_validation_exit_code(tmp_path, capsys):
    code, _ = run(["spectrum", "--n", "4"], tmp_path)
    assert code == cli.EXIT_VALIDATION
    assert "n must be" in capsys.readouterr().err


def test_solver_failure_exit_code(tmp_path):
    code, out = run(["spectrum", "--L", "8", "--h", "0.25", "--method", "chebyshev",
                     "--max-iter", "1", "--tol", "1e-14"], tmp_path)
    assert code == cli.EXIT_SOLVER
    data = json.loads((out / "spectrum.json").read_text())
    assert data["status"] == "unconverged"
    assert len(data["residuals"]) > 0


def test_thread_env(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.THREADS_ENV, "0")
    code, _ = run(["susy", "--nb", "3"], tmp_path)
    assert code == cli.EXIT_VALIDATION
    monkeypatch.setenv(cli.THREADS_ENV, "1")
    code, _ = run(["susy", "--nb", "3"], tmp_path)
    assert code == 0


def test_susy_command(tmp_path, capsys):
    code, out = run(["susy", "--nb", "6"], tmp_path)
    assert code == 0
    data = json.loads((out / "susy.json").read_text())
    assert data["max_residual"] <= 1e-14
    assert data["paired"] is True
    assert "paired: True" in capsys.readouterr().out


def test_duality_command(tmp_path):
    p = tmp_path / "dual.cfg"
    p.write_text("side = charge\nq = 1\nphi = 2\nS = 1\nm = 1\nhbar = 1\nmu = 1\neps0 = 1\nc = 1\n")
    code, out = run(["duality", "--params", str(p)], tmp_path)
    assert code == 0
    data = json.loads((out / "duality.json").read_text())
    assert data["dipole"]["lambda"] == 2.0 and data["dipole"]["rho0"] == 2.0
    assert data["delta_E_charge"] == data["delta_E_dipole"] == 2.0


def test_duality_missing_area(tmp_path):
    p = tmp_path / "dual.cfg"
    p.write_text("side = charge\nq = 1\nphi = 2\nm = 1\nhbar = 1\nmu = 1\neps0 = 1\nc = 1\n")
    code, _ = run(["duality", "--params", str(p)], tmp_path)
    assert code == cli.EXIT_VALIDATION


def gauge_args(*extra):
    return ["gauge-check", "--L", "8", "--h", "0.5", "--sigma", "-1", *extra]


def test_gauge_self_comparison(tmp_path):
    code, out = run(gauge_args("--base", "plate", "--target", "plate"), tmp_path)
    assert code == 0
    data = json.loads((out / "gauge_check.json").read_text())
    assert data["field_strength_max_diff"] == 0.0
    assert data["vector_potential_mismatch"] == 0.0
    assert data["ground_energy_gaps"]["gap"] == [0.0, 0.0, 0.0]


def test_gauge_symmetric_to_plate(tmp_path):
    code, out = run(gauge_args("--base", "symmetric", "--target", "plate", "--chi", "1.1=0.5"), tmp_path)
    assert code == 0
    data = json.loads((out / "gauge_check.json").read_text())
    assert data["field_strength_max_diff"] == 0.0
    assert data["vector_potentials_match"]
    gaps = data["ground_energy_gaps"]["gap"]
    assert gaps[-1] < 0.01 and gaps[0] > gaps[1] > gaps[2]


def test_gauge_wrong_chi_flagged(tmp_path, capsys):
    code, out = run(gauge_args("--base", "symmetric", "--target", "plate", "--chi", "1.1=1"), tmp_path)
    assert code == 0
    data = json.loads((out / "gauge_check.json").read_text())
    assert data["field_strength_max_diff"] == 0.0
    assert not data["vector_potentials_match"]
    assert "MISMATCH" in capsys.readouterr().out


def test_gauge_nonharmonic_rejected(tmp_path):
    code, out = run(gauge_args("--chi", "2.0=1"), tmp_path)
    assert code == cli.EXIT_VALIDATION
    assert not (out / "gauge_check.json").exists()


def test_convergence_command(tmp_path):
    code, out = run(["convergence", "--kind", "free", "--L", "2", "--hs", "0.25,0.125,0.0625"], tmp_path)
    assert code == 0
    data = json.loads((out / "convergence.json").read_text())
    assert data["studies"]["box_ground_energy"]["slope"] == pytest.approx(2.0, abs=0.2)


def test_convergence_needs_three_levels(tmp_path):
    code, _ = run(["convergence", "--hs", "0.5,0.25"], tmp_path)
    assert code == cli.EXIT_VALIDATION
