import csv
import io
import json
import math
import subprocess
import sys

import pytest

from vmfdiv import chi_square, kl, log_normalizer, make_vmf, uniform_sphere
from vmfdiv.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def div_json(*argv):
    code, text = run("div", *argv)
    assert code == 0
    return json.loads(text)


def test_kl_uniform_example():
    rec = div_json("--kind", "kl", "--p", "3", "--kappa-y", "1", "--mu-y", "0,0,1", "--uniform-ref")
    assert rec["branch"] == "uniform_reference"
    assert rec["value"] == kl(make_vmf(3, 1.0, [0, 0, 1]), uniform_sphere(3)).value
    assert rec["value"] == pytest.approx(0.1516, abs=1e-4)


def test_renyi_order_one_exits_2(capsys):
    code, _ = run("div", "--kind", "renyi", "--alpha", "1", "--p", "3", "--kappa-y", "1",
                  "--mu-y", "0,0,1", "--uniform-ref")
    assert code == 2
    assert "kl" in capsys.readouterr().err


def test_chi2_combined_zero_example():
    rec = div_json("--kind", "chi2", "--p", "3", "--kappa-y", "1", "--mu-y", "0,0,1",
                   "--kappa-z", "2", "--mu-z", "0,0,1")
    uni = div_json("--kind", "chi2", "--p", "3", "--kappa-y", "1", "--mu-y", "0,0,1", "--uniform-ref")
    assert rec["branch"] == "combined_zero"
    assert rec["value"] == pytest.approx(uni["value"], rel=1e-14)


@pytest.mark.parametrize("argv", [
    ["div", "--kind", "kl", "--p", "3", "--kappa-y", "0", "--mu-y", "0,0,1", "--uniform-ref"],
    ["div", "--kind", "kl", "--p", "3", "--kappa-y", "1", "--mu-y", "0,1", "--uniform-ref"],
    ["div", "--kind", "kl", "--p", "3", "--kappa-y", "1", "--mu-y", "0,0,1", "--kappa-z", "1"],
    ["div", "--kind", "kl", "--p", "3", "--kappa-y", "1", "--mu-y", "a,b,c", "--uniform-ref"],
    ["div", "--kind", "renyi", "--p", "3", "--kappa-y", "1", "--mu-y", "0,0,1", "--uniform-ref"],
    ["div", "--kind", "bogus", "--p", "3", "--kappa-y", "1", "--mu-y", "0,0,1", "--uniform-ref"],
    ["div", "--kind", "kl", "--p", "3", "--kappa-y", "1", "--mu-y", "0,0,1"],
    ["moments", "--p", "3", "--kappa", "-1", "--mu", "0,0,1"],
    ["profile", "--p", "4", "--kappa", "1"],
    ["sweep", "--kind", "kl", "--p", "3", "--kappa-y-grid", "1e2:1e1:10", "--mu-y", "1,0,0", "--uniform-ref"],
    ["check", "--suite", "nope"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, out = run(*argv)
    assert code == 2
    assert out == ""
    assert capsys.readouterr().err


def test_direction_warning(capsys):
    rec = div_json("--kind", "kl", "--p", "2", "--kappa-y", "1", "--mu-y", "3,4",
                   "--kappa-z", "1", "--mu-z", "1,0")
    assert "norm 5" in capsys.readouterr().err
    assert rec["value"] == kl(make_vmf(2, 1.0, [0.6, 0.8]), make_vmf(2, 1.0, [1, 0])).value


def test_tv_bounds_report():
    rec = div_json("--kind", "tv-bounds", "--p", "3", "--kappa-y", "1", "--mu-y", "0,0,1", "--uniform-ref")
    assert rec["hellinger_sq"] <= rec["kl"] <= rec["chi_sq"]
    assert rec["best_tv_upper"] == min(math.sqrt(rec["hellinger_sq"]), rec["pinsker_bound"])


@pytest.mark.parametrize("kind", ["kl", "renyi", "chi2", "hellinger2", "tv-bounds"])
def test_json_round_trip(kind):
    argv = ["--kind", kind, "--p", "4", "--kappa-y", "3.7", "--mu-y", "0.1,0.2,0.3,0.4",
            "--kappa-z", "1.3", "--mu-z", "1,0,0,-1", "--alpha", "0.7"]
    first = div_json(*argv)
    again = ["--kind", first["kind"], "--p", str(first["p"]), "--kappa-y", repr(first["kappa_y"]),
             "--mu-y", first["mu_y"], "--kappa-z", repr(first["kappa_z"]), "--mu-z", first["mu_z"],
             "--alpha", repr(first["alpha"])]
    assert div_json(*again)["value"] == first["value"]


def test_non_finite_values_are_strings():
    rec = div_json("--kind", "chi2", "--p", "10", "--kappa-y", "5000", "--mu-y", "1,0,0,0,0,0,0,0,0,0",
                   "--kappa-z", "5000", "--mu-z", "-1,0,0,0,0,0,0,0,0,0")
    assert rec["value"] == "inf"


def test_sweep_csv():
    code, text = run("sweep", "--kind", "kl", "--p", "3", "--kappa-y-grid", "1e2:1e6:10",
                     "--mu-y", "1,0,0", "--uniform-ref")
    assert code == 0
    assert "\r" not in text
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [float(r["kappa_y"]) for r in rows] == [1e2, 1e3, 1e4, 1e5, 1e6]
    ratio = [float(r["value_over_ln_kappa_y"]) for r in rows]
    assert abs(ratio[-1] / ratio[-2] - 1) < 0.2
    for r in rows:
        expected = kl(make_vmf(3, float(r["kappa_y"]), [1, 0, 0]), uniform_sphere(3)).value
        assert float(r["value"]) == expected


def test_chi_square_sweep_bounded_over_kappa():
    code, text = run("sweep", "--kind", "chi2", "--p", "3", "--kappa-y-grid", "1e2:1e6:10",
                     "--mu-y", "1,0,0", "--uniform-ref")
    ratio = [float(r["value_over_kappa_y"]) for r in csv.DictReader(io.StringIO(text))]
    assert max(ratio) <= 1.0


def test_moments_examples():
    code, text = run("moments", "--p", "3", "--kappa", "1", "--mu", "0,0,1")
    rec = json.loads(text)
    r = 1 / math.tanh(1.0) - 1
    assert rec["mean_resultant_length"] == pytest.approx(r, rel=1e-14)
    assert len(rec["covariance"]) == 9
    assert rec["covariance_trace"] == pytest.approx(1 - r * r, abs=1e-12)
    code, text = run("moments", "--p", "2", "--kappa", "1e-9", "--mu", "1,0")
    assert json.loads(text)["circular_variance"] == pytest.approx(1.0, abs=1e-8)


def test_profile_examples():
    code, text = run("profile", "--p", "2", "--kappa", "1,1e-12", "--n-angles", "3")
    rows = [tuple(map(float, r)) for r in list(csv.reader(io.StringIO(text)))[1:]]
    assert rows[0][2] == pytest.approx(math.e / (2 * math.pi * 1.2660658777520082), rel=1e-14)
    assert rows[1][2] == pytest.approx(math.exp(-log_normalizer(2, 1.0)), rel=1e-14)
    for _, _, density in rows[3:]:
        assert density == pytest.approx(1 / (2 * math.pi), rel=1e-10)


def test_check_bounds_passes():
    code, text = run("check", "--suite", "bounds")
    assert code == 0
    assert "FAIL" not in text


def test_check_exit_code_on_failure(monkeypatch):
    from vmfdiv import checks

    monkeypatch.setitem(checks.SUITE_FUNCS, "bounds",
                        lambda seed, samples: [checks.CheckResult("bounds", "x", False, "forced")])
    code, text = run("check", "--suite", "bounds")
    assert code == 1
    assert "FAIL" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vmfdiv", "div", "--kind", "kl", "--p", "2",
                           "--kappa-y", "1", "--mu-y", "1,0", "--uniform-ref"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["branch"] == "uniform_reference"
