"""Command line interface: formats, round trips, and exit codes."""

import csv
import io
import json

import numpy as np
import pytest
from click.testing import CliRunner
from scipy.optimize import brentq

import jost1d as j
from jost1d.cli import main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def barrier_file(tmp_path):
    path = tmp_path / "barrier.json"
    path.write_text(json.dumps(
        {"kind": "square", "params": {"left": -1.0, "right": 1.0, "height": 1.0}}
    ))
    return str(path)


@pytest.fixture
def resonant_well_file(tmp_path):
    path = tmp_path / "well.json"
    path.write_text(json.dumps(
        {"kind": "square",
         "params": {"left": -1.0, "right": 1.0, "height": -((np.pi / 2) ** 2)}}
    ))
    return str(path)


def _parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows


# ---------------------------------------------------------------------------
# scatter


def test_scatter_csv_round_trip(runner, barrier_file, barrier):
    result = runner.invoke(main, ["scatter", "--potential", barrier_file, "--k", "1.5"])
    assert result.exit_code == 0, result.output
    rows = _parse_csv(result.output)
    header, data = rows[0], rows[1]
    sd = j.scattering(barrier, 1.5)
    record = dict(zip(header, data))
    # repr round trip must be bit-exact
    assert float(record["r_re"]) == sd.r.real
    assert float(record["r_im"]) == sd.r.imag
    assert float(record["t_re"]) == sd.t.real
    assert float(record["a_re"]) == sd.a.real
    assert float(record["unitarity_defect"]) == sd.unitarity_defect()


def test_scatter_multiple_k_and_complex(runner, barrier_file):
    result = runner.invoke(main, [
        "scatter", "--potential", barrier_file,
        "--k", "1.0", "--k", "2.0,0.5", "--k-list", "0.5;3.0",
    ])
    assert result.exit_code == 0
    rows = _parse_csv(result.output)
    assert len(rows) == 5  # header + 4 wavenumbers
    assert rows[2][0] == "2.0" and rows[2][1] == "0.5"


def test_scatter_json(runner, barrier_file, barrier):
    result = runner.invoke(main, [
        "scatter", "--potential", barrier_file, "--k", "1.0", "--format", "json",
    ])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    sd = j.scattering(barrier, 1.0)
    assert payload[0]["r_re"] == sd.r.real
    assert payload[0]["t_im"] == sd.t.imag


def test_scatter_out_file(runner, barrier_file, tmp_path):
    out = tmp_path / "table.csv"
    result = runner.invoke(main, [
        "scatter", "--potential", barrier_file, "--k", "1.0", "--out", str(out),
    ])
    assert result.exit_code == 0
    assert out.exists()
    assert out.read_text().startswith("k_re,")


def test_scatter_requires_wavenumbers(runner, barrier_file):
    result = runner.invoke(main, ["scatter", "--potential", barrier_file])
    assert result.exit_code == 2


def test_scatter_bad_wavenumber(runner, barrier_file):
    result = runner.invoke(main, ["scatter", "--potential", barrier_file, "--k", "abc"])
    assert result.exit_code == 2


def test_scatter_missing_file(runner, tmp_path):
    result = runner.invoke(main, [
        "scatter", "--potential", str(tmp_path / "nope.json"), "--k", "1.0",
    ])
    assert result.exit_code == 2


def test_scatter_malformed_json(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    result = runner.invoke(main, ["scatter", "--potential", str(path), "--k", "1.0"])
    assert result.exit_code == 2


def test_scatter_at_bound_state_exits_3(runner, tmp_path):
    # k on the discrete spectrum: the plane-wave expansion degenerates
    depth = 4.0
    path = tmp_path / "deep.json"
    path.write_text(json.dumps(
        {"kind": "square", "params": {"left": -1.0, "right": 1.0, "height": -depth}}
    ))

    def g(q):
        return q * np.tan(q) - np.sqrt(depth - q * q)

    q = brentq(g, 1e-9, np.pi / 2 - 1e-9)
    kappa = float(np.sqrt(depth - q * q))
    result = runner.invoke(main, [
        "scatter", "--potential", str(path), "--k", f"0,{kappa!r}",
    ])
    assert result.exit_code == 3


# ---------------------------------------------------------------------------
# resonance


def test_resonance_theta_resonant(runner, resonant_well_file):
    result = runner.invoke(main, ["resonance", "theta", "--potential", resonant_well_file])
    assert result.exit_code == 0, result.output
    rows = _parse_csv(result.output)
    record = dict(zip(rows[0], rows[1]))
    assert record["is_resonant"] == "true"
    assert float(record["theta"]) == pytest.approx(-1.0, abs=1e-10)
    assert float(record["ddot0_im"]) == pytest.approx(2.0, abs=1e-5)


def test_resonance_theta_nonresonant(runner, barrier_file):
    result = runner.invoke(main, ["resonance", "theta", "--potential", barrier_file])
    assert result.exit_code == 0
    rows = _parse_csv(result.output)
    record = dict(zip(rows[0], rows[1]))
    assert record["is_resonant"] == "false"
    assert record["theta"] == ""
    assert float(record["d0"]) == pytest.approx(np.sinh(2.0), rel=1e-12)


def test_resonance_theta_json_nonresonant(runner, barrier_file):
    result = runner.invoke(main, [
        "resonance", "theta", "--potential", barrier_file, "--format", "json",
    ])
    payload = json.loads(result.output)
    assert payload["is_resonant"] is False
    assert payload["theta"] is None


def test_resonance_sweep_sections(runner, tmp_path):
    path = tmp_path / "well.json"
    path.write_text(json.dumps(
        {"kind": "square", "params": {"left": -1.0, "right": 1.0, "height": -1.0}}
    ))
    result = runner.invoke(main, [
        "resonance", "sweep", "--potential", str(path),
        "--alpha-min", "0.5", "--alpha-max", "11.0", "--grid", "43",
    ])
    assert result.exit_code == 0, result.output
    blocks = result.output.strip().split("\n\n")
    assert len(blocks) == 2  # sweep table + roots table, no trivial root
    sweep_rows = _parse_csv(blocks[0])
    assert sweep_rows[0] == ["alpha", "d0"]
    assert len(sweep_rows) == 44
    root_rows = _parse_csv(blocks[1])
    assert root_rows[0] == ["root_alpha", "bracket_lo", "bracket_hi", "residual"]
    found = sorted(float(r[0]) for r in root_rows[1:])
    assert len(found) == 2
    assert found[0] == pytest.approx((np.pi / 2) ** 2, abs=1e-5)
    assert found[1] == pytest.approx(np.pi**2, abs=1e-5)


def test_resonance_sweep_json(runner, tmp_path):
    path = tmp_path / "well.json"
    path.write_text(json.dumps(
        {"kind": "square", "params": {"left": -1.0, "right": 1.0, "height": -1.0}}
    ))
    result = runner.invoke(main, [
        "resonance", "sweep", "--potential", str(path),
        "--alpha-min", "-1.0", "--alpha-max", "3.0", "--grid", "17",
        "--format", "json",
    ])
    payload = json.loads(result.output)
    assert payload["trivial_root"] == 0.0
    assert len(payload["sweep"]) == 17
    assert len(payload["roots"]) == 1


def test_resonance_sweep_bad_range(runner, barrier_file):
    result = runner.invoke(main, [
        "resonance", "sweep", "--potential", barrier_file,
        "--alpha-min", "2.0", "--alpha-max", "1.0",
    ])
    assert result.exit_code == 2


# ---------------------------------------------------------------------------
# converge


def test_converge_csv(runner, resonant_well_file, tmp_path):
    result = runner.invoke(main, [
        "converge", "--potential", resonant_well_file,
        "--k", "1.0", "--eps", "0.1,0.05", "--box", "4", "--n", "40",
    ])
    assert result.exit_code == 0, result.output
    rows = _parse_csv(result.output)
    assert rows[0] == ["eps", "r_re", "r_im", "t_re", "t_im", "kernel_distance",
                       "limit_r", "limit_t", "classification"]
    assert [r[0] for r in rows[1:]] == ["0.1", "0.05"]
    assert all(r[-1] == "interface" for r in rows[1:])
    # distances decrease toward the limit
    assert float(rows[2][5]) < float(rows[1][5])


def test_converge_json_classification(runner, barrier_file):
    result = runner.invoke(main, [
        "converge", "--potential", barrier_file,
        "--k", "1.0", "--eps", "0.1", "--box", "3", "--n", "30",
        "--format", "json",
    ])
    payload = json.loads(result.output)
    assert payload[0]["classification"] == "dirichlet"
    assert payload[0]["limit_r"] == -1.0


def test_converge_bad_eps(runner, barrier_file):
    result = runner.invoke(main, [
        "converge", "--potential", barrier_file, "--k", "1.0", "--eps", "0,-1",
    ])
    assert result.exit_code == 2
