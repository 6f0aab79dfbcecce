"""Tests for the command-line interface."""

import math

import pandas as pd
import pytest
from typer.testing import CliRunner

from veblen_dyn.analysis import find_equilibria
from veblen_dyn.cli import app
from veblen_dyn.data import read_label_matrix
from veblen_dyn.utils import resolve_config

runner = CliRunner()

FLAT_FLAGS = [
    "--alpha", "0.5", "--beta", "10", "--rho", "1", "--sigma", "0.5",
    "--gamma", "1.5", "--w", "1", "--c-ref", "1", "--v", "0.25",
]


def invoke(tmp_path, *args: str):
    return runner.invoke(app, ["--out", str(tmp_path), *args])


def test_simulate_settles_on_upper_state(tmp_path):
    """fig7b from (0.6, 0.9) ends next to the upper steady state."""
    result = invoke(tmp_path, "--preset", "fig7b", "simulate", "--record", "5")
    assert result.exit_code == 0

    frame = pd.read_csv(tmp_path / "orbit.csv")
    assert list(frame.columns) == ["t", "e", "pi"]
    assert frame["t"].tolist() == [2001, 2002, 2003, 2004, 2005]

    upper = find_equilibria(resolve_config(preset="fig7b").params)[2]
    assert frame["e"].iloc[-1] == pytest.approx(upper.e_bar, abs=1e-6)
    assert frame["pi"].iloc[-1] == pytest.approx(upper.pi_bar, abs=1e-6)


def test_simulate_record_zero_writes_header_only(tmp_path):
    result = invoke(tmp_path, "--preset", "fig7b", "simulate", "--transient", "3", "--record", "0")
    assert result.exit_code == 0
    assert (tmp_path / "orbit.csv").read_text() == "t,e,pi\n"


def test_simulate_with_choices(tmp_path):
    result = invoke(tmp_path, "--preset", "fig7b", "simulate", "--record", "3", "--choices")
    assert result.exit_code == 0
    columns = pd.read_csv(tmp_path / "orbit.csv").columns.tolist()
    assert columns == ["t", "e", "pi", "c", "m", "c_eff", "overconsumption"]


def test_invalid_parameter_is_a_config_error(tmp_path):
    """Out-of-range constants exit with code 2 and write nothing."""
    result = invoke(tmp_path, "--preset", "fig7b", "--alpha", "1.5", "simulate")
    assert result.exit_code == 2
    assert not (tmp_path / "orbit.csv").exists()


def test_equilibria_three_states(tmp_path):
    result = invoke(tmp_path, "--preset", "fig7b", "equilibria")
    assert result.exit_code == 0

    frame = pd.read_csv(tmp_path / "equilibria.csv")
    assert frame["verdict"].tolist() == ["stable", "fold-unstable", "stable"]
    assert frame["pi_bar"].tolist() == pytest.approx([0.125, 0.478, 0.885], abs=2e-3)


def test_equilibria_unique_state(tmp_path):
    result = invoke(tmp_path, "--preset", "fig7a", "equilibria")
    assert result.exit_code == 0

    frame = pd.read_csv(tmp_path / "equilibria.csv")
    assert len(frame) == 1
    assert frame["pi_bar"].iloc[0] == pytest.approx(0.9946, abs=1e-3)


def test_equilibria_from_flags_only(tmp_path):
    """All constants given as flags; K = 0 puts the steady state on e = 0."""
    result = invoke(tmp_path, *FLAT_FLAGS, "equilibria")
    assert result.exit_code == 0

    frame = pd.read_csv(tmp_path / "equilibria.csv")
    assert len(frame) == 1
    assert frame["e_bar"].iloc[0] == pytest.approx(0.0, abs=1e-12)
    assert frame["pi_bar"].iloc[0] == pytest.approx(1.0 / (1.0 + math.e), abs=1e-10)


def test_bifurcation_without_crossings(tmp_path):
    """A stable family yields samples and a header-only crossings file."""
    result = invoke(
        tmp_path, *FLAT_FLAGS, "bifurcation",
        "--param", "alpha", "--start", "0.1", "--stop", "0.9",
        "--steps", "3", "--transient", "10", "--record", "2",
    )
    assert result.exit_code == 0
    assert len(pd.read_csv(tmp_path / "sweep.csv")) == 6
    assert (tmp_path / "crossings.csv").read_text() == "param_value,type\n"


def test_basin_single_cell(tmp_path):
    result = invoke(tmp_path, "--preset", "fig7b", "basin", "--resolution", "1")
    assert result.exit_code == 0

    labels = read_label_matrix(tmp_path / "basin_labels.csv")
    assert labels.shape == (1, 1)
    summary = pd.read_csv(tmp_path / "basin_summary.csv")
    assert summary["fraction"].sum() == pytest.approx(1.0)


def test_tax_check(tmp_path):
    assert invoke(tmp_path, "--preset", "fig7b", "tax-check", "--trials", "2000").exit_code == 0
    assert invoke(tmp_path, "--preset", "fig7b", "tax-check", "--trials", "0").exit_code == 2


def test_isoclines(tmp_path):
    result = invoke(tmp_path, "--preset", "fig7b", "isoclines", "--points", "21")
    assert result.exit_code == 0

    frame = pd.read_csv(tmp_path / "isoclines.csv")
    assert set(frame["curve"]) == {"linear", "logistic", "equilibrium"}
    assert len(frame) == 45
    steady = frame[frame["curve"] == "equilibrium"]
    assert steady["pi"].tolist() == pytest.approx([0.125, 0.478, 0.885], abs=2e-3)


def test_presets_and_show_config(tmp_path):
    result = invoke(tmp_path, "presets")
    assert result.exit_code == 0
    assert "fig7b" in result.output

    result = invoke(tmp_path, "--preset", "fig8a", "show-config")
    assert result.exit_code == 0
    assert '"alpha": 0.5' in result.output


def test_show_config_without_params(tmp_path):
    assert invoke(tmp_path, "show-config").exit_code == 2


def test_threads_option_and_environment(tmp_path, monkeypatch):
    """Thread count comes from the flag or VEBLEN_DYN_THREADS and must be positive."""
    assert invoke(tmp_path, "--preset", "fig7b", "--threads", "0", "equilibria").exit_code == 2

    monkeypatch.setenv("VEBLEN_DYN_THREADS", "2")
    result = invoke(tmp_path, "--preset", "fig7b", "basin", "--resolution", "4")
    assert result.exit_code == 0

    monkeypatch.setenv("VEBLEN_DYN_THREADS", "0")
    assert invoke(tmp_path, "--preset", "fig7b", "equilibria").exit_code == 2
