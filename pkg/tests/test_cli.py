import json

import pytest

from circlegate import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sweep_csv_to_stdout(capsys):
    code, out, _ = run(capsys, "sweep", "--grid-size", "8", "--format", "csv", "-o", "-")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "theta,phi,F_c,F_t"
    assert len(lines) == 65


def test_sweep_json_file_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["sweep", "--grid-size", "8", "--format", "json", "-o", str(a)]) == 0
    assert cli.main(["sweep", "--grid-size", "8", "--format", "json", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    summary = json.loads(a.read_text())
    assert abs(summary["mean_F"] - 0.8535533906) < 1e-10


def test_not_demo(capsys):
    code, out, _ = run(capsys, "not-demo")
    assert code == 0
    assert "0.666666666667" in out
    assert "2,0.75" in out


def test_qcm_check(capsys):
    code, out, _ = run(capsys, "qcm-check", "--grid-size", "16")
    assert code == 0
    d = json.loads(out)
    assert d["pass"] is True and d["qcm_residual"] < 1e-10


def test_verify_table(capsys):
    code, out, _ = run(capsys, "verify", "--grid-size", "16")
    rows = {line.rsplit(None, 1)[0].split("  ")[0].strip(): line.split()[-1]
            for line in out.splitlines()[1:]}
    assert rows["unitarity residual |V^H V - I|"] == "FAIL"
    others = [v for k, v in rows.items() if k != "unitarity residual |V^H V - I|"]
    assert others and all(v == "PASS" for v in others)
    # exit code follows the table
    assert code == 1


@pytest.mark.xfail(strict=True, reason="verify reports the optimal gate's non-zero unitarity residual")
def test_verify_exits_zero(capsys):
    code, _, _ = run(capsys, "verify", "--grid-size", "64")
    assert code == 0


def test_optimize_small_run(tmp_path, capsys):
    path = tmp_path / "opt.json"
    code = cli.main(["optimize", "--seed", "3", "--restarts", "1", "--max-iterations", "5",
                     "--grid-size", "8", "-o", str(path)])
    _, err = capsys.readouterr()
    d = json.loads(path.read_text())
    assert d["seed"] == 3 and d["grid_size"] == 8
    assert len(d["per_restart_objectives"]) == 1
    assert code == 1 and "not within" in err
    # the result file feeds back into sweep
    assert cli.main(["sweep", "--isometry", str(path), "--grid-size", "8", "--format", "json"]) == 0


def test_seed_env_fallback_and_precedence(monkeypatch, tmp_path):
    parser = cli.build_parser()
    cfg = cli.resolve_config(parser.parse_args(["optimize"]), environ={"CIRCLEGATE_SEED": "99"})
    assert cfg["seed"] == 99
    conf = tmp_path / "c.json"
    conf.write_text(json.dumps({"seed": 5, "grid_size": 16}))
    cfg = cli.resolve_config(parser.parse_args(["optimize", "--config", str(conf)]),
                             environ={"CIRCLEGATE_SEED": "99"})
    assert cfg["seed"] == 5 and cfg["grid_size"] == 16
    cfg = cli.resolve_config(parser.parse_args(["optimize", "--config", str(conf), "--seed", "7"]),
                             environ={})
    assert cfg["seed"] == 7


def test_defaults():
    cfg = cli.resolve_config(cli.build_parser().parse_args(["sweep"]), environ={})
    assert cfg["format"] == "csv" and cfg["output"] == "-" and cfg["grid_size"] == 64


@pytest.mark.parametrize("argv", [
    ["verify", "--grid-size", "4"],
    ["bogus"],
    ["sweep", "--format", "xml"],
    ["optimize", "--format", "csv"],
    ["sweep", "--grid-size", "8", "-o", "/nonexistent/dir/out.csv"],
    ["sweep", "--isometry", "/nonexistent.json"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert cli.main(argv) == 2


def test_bad_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("CIRCLEGATE_SEED", "abc")
    assert cli.main(["not-demo"]) == 2


def test_measurement_probs_helper():
    import numpy as np
    for theta0 in (0.0, np.pi / 3, np.pi / 2, np.pi):
        p0, p1 = cli.superposition_marginal_probs(theta0, 1.4)
        assert abs(p0 - np.cos(theta0 / 2) ** 2) < 1e-12
        assert abs(p1 - np.sin(theta0 / 2) ** 2) < 1e-12
