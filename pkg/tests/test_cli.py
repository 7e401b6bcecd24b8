import json
from pathlib import Path

import numpy as np
import pytest

from qpathdiv import serialize
from qpathdiv.cli import main
from qpathdiv.states import RandomSpec, random_commuting_pair, random_density

FIXTURES = Path(__file__).parent / "fixtures"
RHO_FIXTURE = str(FIXTURES / "rho_2x2_seed42.json")
SIGMA_FIXTURE = str(FIXTURES / "sigma_2x2_seed42.json")


def _write_state(path, dm):
    serialize.save_state(path, dm)
    return str(path)


def _rows_from_csv(text):
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


def test_compute_identical_states_all_zero(tmp_path, capsys):
    path = _write_state(tmp_path / "a.json", random_density(RandomSpec(2, 3, 0.05)))
    assert main(["compute", path, path]) == 0
    rows = _rows_from_csv(capsys.readouterr().out)
    assert len(rows) == 10
    assert all(abs(float(r["value"])) <= 1e-9 for r in rows)


def test_compute_commuting_pair_all_equal(tmp_path, capsys):
    rho, sigma = random_commuting_pair(2, 5, 0.05)
    pa = _write_state(tmp_path / "rho.json", rho)
    pb = _write_state(tmp_path / "sigma.json", sigma)
    assert main(["compute", pa, pb]) == 0
    values = [float(r["value"]) for r in _rows_from_csv(capsys.readouterr().out)]
    assert max(values) - min(values) <= 1e-10


def test_compute_fixture_ordering(capsys):
    assert main(["compute", RHO_FIXTURE, SIGMA_FIXTURE]) == 0
    rows = {r["id"]: float(r["value"]) for r in _rows_from_csv(capsys.readouterr().out)}
    assert rows["e_s"] <= rows["D"] + 1e-9
    assert rows["D"] <= rows["Dbar"] + 1e-9
    assert rows["e_b"] == pytest.approx(rows["D"], abs=1e-12)
    assert rows["m_r"] == pytest.approx(rows["Dbar"], abs=1e-6)


def test_compute_json_format_and_bits(capsys):
    assert main(["compute", RHO_FIXTURE, SIGMA_FIXTURE, "--format", "json", "--bits"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["unit"] == "bits"
    by_id = {r["id"]: r for r in payload["rows"]}
    assert by_id["m_s"]["method"] == "quadrature"
    assert by_id["m_s"]["nodes"] >= 64
    assert by_id["D"]["method"] == "closed"


def test_compute_bits_scaling(capsys):
    assert main(["compute", RHO_FIXTURE, SIGMA_FIXTURE]) == 0
    nats = {r["id"]: float(r["value"]) for r in _rows_from_csv(capsys.readouterr().out)}
    assert main(["compute", RHO_FIXTURE, SIGMA_FIXTURE, "--bits"]) == 0
    bits = {r["id"]: float(r["value"]) for r in _rows_from_csv(capsys.readouterr().out)}
    assert bits["D"] == pytest.approx(nats["D"] / np.log(2.0), rel=1e-12)


def test_compute_validation_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "re": [[0.6, 0], [0, 0.6]], "im": [[0, 0], [0, 0]]}))
    assert main(["compute", str(bad), RHO_FIXTURE]) == 2
    assert "TraceNotOne" in capsys.readouterr().err


def test_compute_missing_file_exit_code(capsys):
    assert main(["compute", "does-not-exist.json", RHO_FIXTURE]) == 2


def test_compute_numerical_exit_code(capsys):
    # an unmeetable refinement demand trips the quadrature failure path
    assert main(["compute", RHO_FIXTURE, SIGMA_FIXTURE, "--rel-tol", "1e-30"]) == 3
    assert "QuadratureNotConverged" in capsys.readouterr().err


def test_compute_output_file(tmp_path):
    out = tmp_path / "table.csv"
    assert main(["compute", RHO_FIXTURE, SIGMA_FIXTURE, "--output", str(out)]) == 0
    assert out.read_text().startswith("id,value,method,nodes")


def test_compute_deterministic(capsys):
    assert main(["compute", RHO_FIXTURE, SIGMA_FIXTURE]) == 0
    first = capsys.readouterr().out
    assert main(["compute", RHO_FIXTURE, SIGMA_FIXTURE]) == 0
    assert capsys.readouterr().out == first


def test_geodesic_single_point(capsys):
    assert main(["geodesic", RHO_FIXTURE, "--kind", "b", "--target", SIGMA_FIXTURE, "--thetas", "0"]) == 0
    rows = _rows_from_csv(capsys.readouterr().out)
    assert len(rows) == 1
    assert abs(float(rows[0]["moment"])) <= 1e-12
    base = serialize.load_state(RHO_FIXTURE)
    spectrum = np.sort(base.spectrum())
    assert float(rows[0]["eig_min"]) == pytest.approx(spectrum[0], abs=1e-12)
    assert float(rows[0]["eig_max"]) == pytest.approx(spectrum[-1], abs=1e-12)


def test_geodesic_convexity_column(capsys):
    assert main(
        ["geodesic", SIGMA_FIXTURE, "--kind", "s", "--target", RHO_FIXTURE, "--thetas", "0:1:9"]
    ) == 0
    rows = _rows_from_csv(capsys.readouterr().out)
    assert len(rows) == 9
    assert all(float(r["moment_d2"]) >= -1e-8 for r in rows)


def test_geodesic_target_mode_reaches_target(capsys):
    assert main(
        ["geodesic", SIGMA_FIXTURE, "--kind", "half", "--target", RHO_FIXTURE, "--thetas", "1"]
    ) == 0
    rows = _rows_from_csv(capsys.readouterr().out)
    target = serialize.load_state(RHO_FIXTURE)
    spectrum = np.sort(target.spectrum())
    assert float(rows[0]["eig_min"]) == pytest.approx(spectrum[0], abs=1e-8)
    assert float(rows[0]["eig_max"]) == pytest.approx(spectrum[-1], abs=1e-8)


def test_geodesic_direction_mode(tmp_path, capsys):
    direction = tmp_path / "dir.json"
    serialize.save_matrix(direction, np.array([[0, 1], [1, 0]], dtype=complex))
    assert main(
        ["geodesic", RHO_FIXTURE, "--kind", "r", "--direction", str(direction), "--thetas", "0,0.5,1"]
    ) == 0
    rows = _rows_from_csv(capsys.readouterr().out)
    assert len(rows) == 3


def test_fisher_grid(capsys):
    assert main(["fisher", RHO_FIXTURE, SIGMA_FIXTURE, "--metric", "b", "--points", "0.2,0.5,0.8"]) == 0
    rows = _rows_from_csv(capsys.readouterr().out)
    assert len(rows) == 3
    for r in rows:
        assert float(r["fisher_mixture"]) >= 0
        assert abs(float(r["fisher_mixture"]) - float(r["fisher_numeric"])) <= 1e-6


def test_fisher_lambda_metric(capsys):
    assert main(["fisher", RHO_FIXTURE, SIGMA_FIXTURE, "--metric", "lambda=0.5", "--points", "0.5"]) == 0
    rows = _rows_from_csv(capsys.readouterr().out)
    assert len(rows) == 1


def test_fisher_bad_metric(capsys):
    assert main(["fisher", RHO_FIXTURE, SIGMA_FIXTURE, "--metric", "zeta"]) == 2
    assert main(["fisher", RHO_FIXTURE, SIGMA_FIXTURE, "--metric", "lambda=abc"]) == 2


def test_geodesic_bad_grid(capsys):
    assert main(
        ["geodesic", RHO_FIXTURE, "--kind", "b", "--target", SIGMA_FIXTURE, "--thetas", "x,y"]
    ) == 2


def test_verify_single_claim(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code = main(
        [
            "verify",
            "--claims",
            "relative-entropy-closed-form",
            "--seed",
            "7",
            "--report",
            str(report_path),
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "PASS relative-entropy-closed-form" in out
    payload = json.loads(report_path.read_text())
    assert payload["all_pass"] is True
    assert len(payload["claims"]) == 1


def test_verify_injected_failure(tmp_path, capsys):
    config = {
        "seed": 7,
        "claims": ["m-path-bogoljubov-matches-relative-entropy"],
        "overrides": {
            "m-path-bogoljubov-matches-relative-entropy": {"tolerance": 1e-15, "trials": 4}
        },
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))
    report_path = tmp_path / "report.json"
    assert main(["verify", "--config", str(config_path), "--report", str(report_path)]) == 4
    payload = json.loads(report_path.read_text())
    assert payload["all_pass"] is False
    record = payload["claims"][0]
    assert record["worst_slack"] > 1e-15
    assert "witness" in record


def test_verify_bad_config(tmp_path, capsys):
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps({"seed": 7, "bogus": True}))
    assert main(["verify", "--config", str(config_path)]) == 2
    assert "ConfigError" in capsys.readouterr().err


def test_verify_report_deterministic(tmp_path):
    args = [
        "verify",
        "--claims",
        "e-path-additivity",
        "--seed",
        "3",
    ]
    config = {
        "seed": 3,
        "claims": ["e-path-additivity"],
        "overrides": {"e-path-additivity": {"trials": 4}},
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--config", str(config_path), "--report", str(a)]) == 0
    assert main(["verify", "--config", str(config_path), "--report", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
