import io
import json

import pandas as pd
import pytest
from typer.testing import CliRunner

from greatroot.cli import app
from greatroot.commands import inference
from greatroot.config import settings
from greatroot.utils.errors import ConvergenceError

runner = CliRunner()

RAW = ["--p", "20", "--m", "160", "--n", "40"]
SMALL = ["--p", "5", "--m", "40", "--n", "10"]


@pytest.fixture(autouse=True)
def _tables(tw_tables, monkeypatch):
    monkeypatch.setattr(settings, "USE_CACHE", settings.USE_CACHE)
    return tw_tables


def invoke_json(*args):
    result = runner.invoke(app, list(args))
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def invoke_csv(*args):
    result = runner.invoke(app, list(args))
    assert result.exit_code == 0, result.output
    return pd.read_csv(io.StringIO(result.stdout))


# ================================
# PVALUE AND CRIT
# ================================

def test_crit_then_pvalue_round_trips():
    crit = invoke_json("crit", *RAW, "--alpha", "0.05")
    theta = crit["results"]["theta"]
    out = invoke_json("pvalue", *RAW, "--theta", repr(theta))
    assert out["results"]["p_value"] == pytest.approx(0.05, abs=1e-6)
    assert out["results"]["s"] == pytest.approx(crit["results"]["s"], abs=1e-9)


def test_pvalue_envelope():
    out = invoke_json("pvalue", *RAW, "--theta", "0.5")
    assert out["schema_version"] == settings.SCHEMA_VERSION
    assert out["command"] == "pvalue"
    assert out["inputs"] == {
        "setting": "raw", "p": 20, "m": 160, "n": 40, "theta": 0.5, "ensemble": "real", "scale": "logit",
    }
    assert set(out["results"]) == {"p", "m", "n", "mu", "sigma", "s", "log_cdf", "p_value"}
    assert out["caveats"] == []


def test_cca_setting():
    out = invoke_json(
        "pvalue", "--setting", "cca", "--pvars", "5", "--qvars", "10", "--nobs", "51", "--mean-correct", "--theta", "0.99",
    )
    assert (out["results"]["p"], out["results"]["m"], out["results"]["n"]) == (5, 40, 10)
    assert out["results"]["p_value"] < 1e-3
    # min(p, n) = 5 is odd in the real case
    assert "p_odd" in out["caveats"]


def test_complex_data_drops_odd_dimension_caveat():
    out = invoke_json("pvalue", *SMALL, "--theta", "0.6", "--ensemble", "complex")
    assert "p_odd" not in out["caveats"]


def test_theta_scale_crit():
    out = invoke_json("crit", *RAW, "--alpha", "0.05", "--scale", "theta")
    assert 0.0 < out["results"]["theta"] < 1.0
    assert out["inputs"]["scale"] == "theta"


# ================================
# EXIT CODES
# ================================

def test_infeasible_setting_exits_2():
    args = ["pvalue", "--setting", "cca", "--pvars", "5", "--qvars", "10", "--nobs", "12", "--theta", "0.5"]
    result = runner.invoke(app, args)
    assert result.exit_code == 2
    assert "n' - q" in result.stderr


def test_missing_setting_option_exits_2():
    result = runner.invoke(app, ["crit", "--setting", "discrim", "--p", "5"])
    assert result.exit_code == 2
    assert "--g" in result.stderr and "--nobs" in result.stderr


@pytest.mark.parametrize("theta", ["0", "1", "1.5"])
def test_theta_outside_unit_interval_exits_2(theta):
    assert runner.invoke(app, ["pvalue", *RAW, "--theta", theta]).exit_code == 2


def test_x_scale_rejected():
    assert runner.invoke(app, ["crit", *RAW, "--scale", "x"]).exit_code == 2


def test_numerical_failure_exits_3(monkeypatch):
    def failing(*args, **kwargs):
        raise ConvergenceError("did not converge", {"estimate": 0.5})

    monkeypatch.setattr(inference, "greatest_root_test", failing)
    result = runner.invoke(app, ["pvalue", *RAW, "--theta", "0.5"])
    assert result.exit_code == 3
    payload = json.loads(result.stderr.strip())
    assert payload["error"] == "ConvergenceError"
    assert payload["diagnostics"] == {"estimate": 0.5}


def test_unknown_log_level_is_a_usage_error():
    assert runner.invoke(app, ["--log-level", "chatty", "tw", "--quantile", "0.5"]).exit_code == 2


# ================================
# TRACY-WIDOM
# ================================

def test_tw_quantile():
    out = invoke_json("tw", "--beta", "1", "--quantile", "0.95")
    assert out["results"]["quantiles"][0]["s"] == pytest.approx(0.98, abs=0.01)


def test_tw_values_flag_extrapolation():
    out = invoke_json("tw", "--beta", "2", "--s", "0", "--s", "15")
    inside, outside = out["results"]["cdf"]
    assert not inside["extrapolated"] and outside["extrapolated"]
    assert out["caveats"] == ["extrapolated_tail"]


def test_tw_default_grid_csv():
    frame = invoke_csv("tw", "--beta", "2")
    assert list(frame.columns) == ["s", "F"]
    assert len(frame) == 121
    assert frame["s"].iloc[0] == -6.0 and frame["s"].iloc[-1] == 6.0
    assert frame["F"].is_monotonic_increasing


def test_no_cache_flag():
    invoke_json("--no-cache", "tw", "--quantile", "0.5")
    assert settings.USE_CACHE is False


# ================================
# SIMULATION
# ================================

def test_table_is_deterministic():
    args = ["table", *SMALL, "--reps", "200", "--seed", "1", "--percentile", "0.5", "--percentile", "0.9"]
    first = invoke_csv(*args)
    assert list(first.columns) == ["s", "estimate", "se", "nominal"]
    assert list(first["nominal"]) == [0.5, 0.9]
    pd.testing.assert_frame_equal(first, invoke_csv(*args, "--threads", "3"))


def test_simulate_writes_csv(tmp_path):
    path = tmp_path / "sim.csv"
    result = runner.invoke(app, ["simulate", *SMALL, "--reps", "300", "--seed", "2", "--out", str(path)])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["s", "estimate", "se", "nominal"]
    assert len(frame) == 9


def test_simulate_plot_data():
    frame = invoke_csv("simulate", *SMALL, "--reps", "150", "--seed", "3", "--plot-data", "--chunks", "3")
    assert list(frame.columns) == ["empirical", "tracy_widom"]
    assert len(frame) == 150


def test_spectrum_summary():
    out = invoke_json("spectrum", "--p", "20", "--m", "160", "--n", "40", "--draws", "20", "--seed", "5")
    results = out["results"]
    assert results["theta_minus"] < results["empirical_mean"] < results["theta_plus"]
    assert results["printed_constant_ratio"] == pytest.approx(1.0, rel=1e-6)
    assert 0.0 <= results["ks_distance"] <= 0.15


# ================================
# RATE CHECKS
# ================================

def test_lg_check_with_plot_data(tmp_path):
    overlay = tmp_path / "overlay.csv"
    frame = invoke_csv("lg-check", "--N", "20", "--N", "40", "--plot-data", str(overlay))
    assert list(frame.columns) == ["N", "sup_error", "ratio"]
    assert list(frame["N"]) == [20, 40]
    assert 0.0 < frame["ratio"].iloc[1] < 1.0
    assert list(pd.read_csv(overlay).columns) == ["s", "phi_check", "airy"]


def test_kernel_check_writes_report(tmp_path):
    path = tmp_path / "kernel.csv"
    result = runner.invoke(app, ["kernel-check", "--N", "20", "--N", "40", "--out", str(path)])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(path)
    assert list(frame["N"]) == [20, 40]
    assert frame["sup_error"].gt(0).all()


def test_lg_check_on_u_scale(tmp_path):
    overlay = tmp_path / "overlay.csv"
    frame = invoke_csv("lg-check", "--N", "20", "--N", "40", "--scale", "u", "--plot-data", str(overlay))
    assert frame["sup_error"].gt(0).all()
    assert pd.read_csv(overlay)["s"].iloc[0] == -2.0


def test_lg_check_rejects_logit_scale():
    assert runner.invoke(app, ["lg-check", "--N", "20", "--scale", "logit"]).exit_code == 2
