import hashlib
import json
import shutil
import subprocess
import sys

import pytest

from glfock.cli import ConfigError, load_config, main


def run_cli(capsys, argv):
    rc = main(argv)
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


def write_cfg(tmp_path, obj, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


# ---------------------------------------------------------------------------
# config loading
# ---------------------------------------------------------------------------

def test_load_config_defaults():
    cfg = load_config(None)
    assert cfg.desc.family == "exponential"
    assert cfg.series_N == 80 and cfg.basis_N == 12 and cfg.seed == 0


def test_load_config_fields(tmp_path):
    p = write_cfg(tmp_path, {
        "phi": {"family": "dunkl", "params": {"kappa": 0.5}, "normalized": True},
        "truncation": {"series_N": 40, "basis_N": 6},
        "seed": 11,
        "output": {"format": "json"},
    })
    cfg = load_config(p)
    assert cfg.desc.family == "dunkl" and cfg.desc.normalized
    assert cfg.series_N == 40 and cfg.basis_N == 6 and cfg.seed == 11
    assert cfg.out_format == "json"


def test_load_config_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(str(bad))
    with pytest.raises(ConfigError):
        load_config(write_cfg(tmp_path, {"phi": {"family": "nope", "params": {}}}))
    with pytest.raises(ConfigError):
        load_config(write_cfg(tmp_path, {"truncation": {"series_N": -3}}))
    with pytest.raises(ConfigError):
        load_config(write_cfg(tmp_path, {"seed": -1}))
    with pytest.raises(ConfigError):
        load_config(write_cfg(tmp_path, {"output": {"format": "xml"}}))
    with pytest.raises(ConfigError):
        load_config(write_cfg(tmp_path, {"quadrature": {"radial": "monte_carlo"}}))


# ---------------------------------------------------------------------------
# phi-info
# ---------------------------------------------------------------------------

def test_phi_info_json(capsys):
    rc, out, _ = run_cli(capsys, ["phi-info", "--format", "json"])
    assert rc == 0
    info = json.loads(out)
    assert info["family"] == "exponential"
    assert info["psi1"] == 1.0 and info["psi2"] == 0.5
    assert info["r_lower"] == 1.5 and info["upper_flag"] == "unbounded-trend"
    assert abs(info["rho_hat"] - 1.0) < 0.05
    assert info["phi_coeffs"][3] == pytest.approx(1 / 6, abs=1e-16)


def test_phi_info_csv(capsys):
    rc, out, _ = run_cli(capsys, ["phi-info"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "key,value"
    assert lines[1] == "family,exponential"
    assert any(line.startswith("psi1,1.0") for line in lines)


def test_phi_info_non_entire(capsys, tmp_path):
    p = write_cfg(tmp_path, {"phi": {"family": "backward_shift", "params": {}}})
    rc, out, _ = run_cli(capsys, ["phi-info", "--config", p, "--format", "json"])
    assert rc == 0
    info = json.loads(out)
    assert info["rho_hat"] is None  # order fit refuses radius-1 families
    assert info["r_lower"] == 1.0 and info["r_upper"] == 1.0


# ---------------------------------------------------------------------------
# check suites
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("suite", ["moments", "duality", "bargmann",
                                   "weierstrass", "reproduce"])
def test_check_suites_exponential(capsys, suite):
    rc, out, err = run_cli(capsys, ["check", "--suite", suite, "--format", "json"])
    assert rc == 0, err
    rep = json.loads(out)
    assert rep["passed"] is True
    assert all(r["pass"] for r in rep["rows"])


def test_check_suite_ml(capsys, tmp_path):
    p = write_cfg(tmp_path, {"phi": {"family": "mittag_leffler",
                                     "params": {"rho": 2.0, "mu": 1.0}}})
    for suite in ("moments", "bargmann", "duality"):
        rc, _, err = run_cli(capsys, ["check", "--suite", suite, "--config", p])
        assert rc == 0, (suite, err)


def test_check_csv_status_column(capsys):
    rc, out, _ = run_cli(capsys, ["check", "--suite", "duality"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "check,residual,status"
    assert len(lines) == 21
    assert all(line.endswith(",pass") for line in lines[1:])


def test_check_failure_exit_code(capsys, tmp_path):
    # degree-10 moments cannot survive a 2-node radial rule
    p = write_cfg(tmp_path, {"quadrature": {"radial": "gauss_laguerre",
                                            "radial_nodes": 2}})
    rc, _, err = run_cli(capsys, ["check", "--suite", "moments", "--config", p])
    assert rc == 1
    assert "FAILED" in err


def test_check_non_entire_rejected(capsys, tmp_path):
    p = write_cfg(tmp_path, {"phi": {"family": "backward_shift", "params": {}}})
    for suite in ("moments", "bargmann", "reproduce"):
        rc, _, err = run_cli(capsys, ["check", "--suite", suite, "--config", p])
        assert rc == 2
        assert "config error" in err


def test_bad_config_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    rc, _, err = run_cli(capsys, ["phi-info", "--config", str(bad)])
    assert rc == 2 and "config error" in err
    rc, _, err = run_cli(capsys, ["check", "--suite", "duality", "--seed", "-4"])
    assert rc == 2


# ---------------------------------------------------------------------------
# table commands
# ---------------------------------------------------------------------------

def test_density_command(capsys):
    rc, out, _ = run_cli(capsys, ["density", "--trunc-m", "12"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "r,n_min,n_max,d_minus,d_plus"
    assert lines[1] == "10.0,100,100,0.15915494309189535,0.15915494309189535"
    assert lines[2] == "20.0,400,400,0.15915494309189535,0.15915494309189535"
    rc, out, _ = run_cli(capsys, ["density", "--trunc-m", "12", "--format", "json"])
    assert json.loads(out)["d_plus"] == pytest.approx(0.15915494309189535, abs=1e-16)
    rc, _, err = run_cli(capsys, ["density", "--radii", "10;20"])
    assert rc == 2


def test_weierstrass_table(capsys, tmp_path):
    p = write_cfg(tmp_path, {"truncation": {"series_N": 60, "lattice_M": 10}})
    rc, out, _ = run_cli(capsys, ["weierstrass-table", "--config", p,
                                  "--grid-n", "6", "--extent", "1.5"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "z_re,z_im,lhs,rhs,ratio"
    assert len(lines) == 37          # 6x6 grid plus header
    ratios = [float(line.split(",")[-1]) for line in lines[1:]]
    assert all(r > 0 for r in ratios)
    rc, _, err = run_cli(capsys, ["weierstrass-table", "--grid-n", "3",
                                  "--extent", "1.5"])
    assert rc == 2 and "lattice node" in err


def test_frames_sweep_header_only(capsys):
    rc, out, _ = run_cli(capsys, ["frames-sweep", "--steps", "0"])
    assert rc == 0
    assert out == "s,A,B,condition,basis_dim,stability,status\n"
    rc, _, _ = run_cli(capsys, ["frames-sweep", "--steps", "-1"])
    assert rc == 2
    rc, _, _ = run_cli(capsys, ["frames-sweep", "--s-min", "0"])
    assert rc == 2


def test_frames_sweep_rows(capsys, tmp_path):
    p = write_cfg(tmp_path, {"truncation": {"basis_N": 8}})
    rc, out, _ = run_cli(capsys, ["frames-sweep", "--config", p, "--steps", "3",
                                  "--s-min", "0.5", "--s-max", "2.0",
                                  "--lattice-m", "4"])
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 4
    first = lines[1].split(",")
    assert first[0] == "0.5" and first[-1] == "ok"
    assert float(first[1]) > 0      # A(0.5) healthy on the oversampled side


# ---------------------------------------------------------------------------
# determinism and entry points
# ---------------------------------------------------------------------------

def _digest(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


def test_frames_sweep_deterministic(tmp_path):
    args = ["frames-sweep", "--steps", "3", "--s-min", "0.5", "--s-max", "2.0",
            "--lattice-m", "4"]
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (p1, p2):
        r = subprocess.run([sys.executable, "-m", "glfock.cli", *args,
                            "--out", str(p)], capture_output=True, text=True)
        assert r.returncode == 0, r.stderr
    assert _digest(p1) == _digest(p2)
    assert p1.read_text().startswith("s,A,B,")


def test_bargmann_roundtrip_deterministic(tmp_path):
    args = ["bargmann-roundtrip", "--degree", "8", "--trials", "3"]
    outs = []
    for name, seed in (("a.csv", "5"), ("b.csv", "5"), ("c.csv", "6")):
        p = tmp_path / name
        r = subprocess.run([sys.executable, "-m", "glfock.cli", *args,
                            "--seed", seed, "--out", str(p)],
                           capture_output=True, text=True)
        assert r.returncode == 0, r.stderr
        outs.append(p)
    assert _digest(outs[0]) == _digest(outs[1])
    assert _digest(outs[0]) != _digest(outs[2])  # seed actually feeds the draw
    lines = outs[0].read_text().splitlines()
    assert lines[0] == "trial,roundtrip_err,res_lower,res_raise"
    assert len(lines) == 4


def test_console_script_installed(tmp_path):
    exe = shutil.which("glfock")
    assert exe is not None
    r = subprocess.run([exe, "phi-info", "--format", "json"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["family"] == "exponential"


def test_output_file_writing(tmp_path, capsys):
    p = tmp_path / "out.json"
    rc, out, _ = run_cli(capsys, ["phi-info", "--format", "json", "--out", str(p)])
    assert rc == 0 and out == ""
    assert json.loads(p.read_text())["psi2"] == 0.5
