"""Batch command-line front end.

Subcommands expose the library pipelines with JSON config input and CSV/JSON
output suitable for plotting.  All output is deterministic for a fixed
config and seed: floats are rendered with shortest-roundtrip repr, rows keep
a fixed order, and no timestamps or environment data are emitted.

Exit codes: 0 all checks passed, 1 assertion failure, 2 configuration error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bargmann import (HermiteCoeffs, bargmann_forward, bargmann_inverse,
                       intertwine_residuals)
from .core import (PhiDescriptor, TruncatedSeries, order_degree_check, phi_coeff)
from .errors import ConvergenceError, DivergenceError, NonEntireError
from .fock import (QuadratureScheme, duality_check, moment_check,
                   registered_weight, reproduce, verified_weight)
from .frames import density, frame_sweep
from .weierstrass import (LatticeSpec, omega, omega_bound, psi_pair,
                          radius_bounds, sigma_lower_diag, weierstrass_factor)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_NONCONV = 3


class ConfigError(Exception):
    pass


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    desc: PhiDescriptor
    weight_tag: str = "registered"
    quadrature: Optional[dict] = None
    series_N: int = 80
    lattice_M: int = 12
    basis_N: int = 12
    seed: int = 0
    out_path: Optional[str] = None
    out_format: Optional[str] = None


_DEFAULT_PHI = {"family": "exponential", "params": {}, "normalized": False}


def load_config(path: Optional[str]) -> RunConfig:
    raw = {}
    if path is not None:
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except OSError as e:
            raise ConfigError(f"cannot read config: {e}")
        except json.JSONDecodeError as e:
            raise ConfigError(f"malformed JSON in config: {e}")
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a JSON object")
    try:
        desc = PhiDescriptor.from_dict(raw.get("phi", _DEFAULT_PHI))
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"field 'phi': {e}")
    weight_tag = raw.get("weight", "registered")
    if not isinstance(weight_tag, str):
        raise ConfigError("field 'weight': expected a form tag string")
    quad = raw.get("quadrature")
    if quad is not None:
        if not isinstance(quad, dict):
            raise ConfigError("field 'quadrature': expected an object")
        try:
            QuadratureScheme(**quad)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"field 'quadrature': {e}")
    trunc = raw.get("truncation", {})
    if not isinstance(trunc, dict):
        raise ConfigError("field 'truncation': expected an object")
    cfg = RunConfig(desc=desc, weight_tag=weight_tag, quadrature=quad)
    for key, attr in (("series_N", "series_N"), ("lattice_M", "lattice_M"),
                      ("basis_N", "basis_N")):
        if key in trunc:
            v = trunc[key]
            if not isinstance(v, int) or v <= 0:
                raise ConfigError(f"field 'truncation.{key}': positive integer required")
            setattr(cfg, attr, v)
    seed = raw.get("seed", 0)
    if not isinstance(seed, int) or seed < 0:
        raise ConfigError("field 'seed': natural number required")
    cfg.seed = seed
    out = raw.get("output", {})
    if out:
        if not isinstance(out, dict):
            raise ConfigError("field 'output': expected an object")
        cfg.out_path = out.get("path")
        fmt = out.get("format")
        if fmt is not None and fmt not in ("csv", "json"):
            raise ConfigError("field 'output.format': must be 'csv' or 'json'")
        cfg.out_format = fmt
    return cfg


def _resolve_weight(cfg: RunConfig, verify: bool = True):
    try:
        wk = registered_weight(cfg.desc)
    except ValueError as e:
        raise ConfigError(str(e))
    if cfg.weight_tag not in ("registered", wk.form):
        raise ConfigError(
            f"weight tag {cfg.weight_tag!r} does not match the registered "
            f"form {wk.form!r} for family {cfg.desc.family!r}")
    if verify:
        wk = verified_weight(cfg.desc, quad_scheme=_scheme(cfg))
    return wk


def _scheme(cfg: RunConfig) -> Optional[QuadratureScheme]:
    return QuadratureScheme(**cfg.quadrature) if cfg.quadrature else None


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------

def _num(v):
    if isinstance(v, (np.floating, np.integer, np.complexfloating)):
        v = v.item()
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, complex):
        return f"{v.real!r}{'+' if v.imag >= 0 else '-'}{abs(v.imag)!r}j"
    return str(v)


def _emit(cfg: RunConfig, args, header: list, rows: list, json_obj):
    fmt = args.format or cfg.out_format or ("csv" if header else "json")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header is None:
            raise ConfigError("this command has no CSV form; use --format json")
        w.writerow(header)
        for r in rows:
            w.writerow([_num(v) for v in r])
        text = buf.getvalue()
    else:
        text = json.dumps(json_obj, indent=2, sort_keys=True, default=_json_default) + "\n"
    path = args.out or cfg.out_path
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_default(o):
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o)!r}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_phi_info(cfg: RunConfig, args) -> int:
    d = cfg.desc
    coeffs = [phi_coeff(d, k) for k in range(10)]
    dn = d if d.normalized else d.normalize()
    ps = psi_pair(dn)
    rb = radius_bounds(dn, N=max(100, 2 * cfg.series_N))
    info = {
        "family": d.family,
        "params": d.params_dict,
        "normalized": d.normalized,
        "phi_coeffs": coeffs,
        "psi1": ps.psi1,
        "psi2": ps.psi2,
        "r_lower": rb.r_lower,
        "r_upper": rb.r_upper,
        "upper_flag": rb.upper_flag,
        "rho_asserted": d.rho,
        "sigma_asserted": d.sigma,
    }
    try:
        rep = order_degree_check(d, K=cfg.series_N * 2)
        info["rho_hat"] = rep.rho_hat
        info["sigma_hat"] = rep.sigma_hat
    except NonEntireError:
        info["rho_hat"] = None
        info["sigma_hat"] = None
    rows = [["family", d.family],
            ["params", json.dumps(d.params_dict, sort_keys=True)],
            ["normalized", d.normalized]]
    rows += [[f"phi_{k}", c] for k, c in enumerate(coeffs)]
    rows += [[k, info[k]] for k in ("psi1", "psi2", "r_lower", "r_upper",
                                    "upper_flag", "rho_hat", "sigma_hat",
                                    "rho_asserted", "sigma_asserted")]
    _emit(cfg, args, ["key", "value"], rows, info)
    return EXIT_OK


def _suite_moments(cfg: RunConfig) -> list:
    if not cfg.desc.entire:
        raise ConfigError("moments suite rejects non-entire families")
    wk = _resolve_weight(cfg, verify=False)
    rep = moment_check(cfg.desc, wk, n_max=10, tol=1e-8, quad_scheme=_scheme(cfg))
    return [{"check": f"moment_{row['n']}", "residual": row["residual"],
             "pass": row["residual"] <= 1e-8} for row in rep.rows]


def _random_series(desc: PhiDescriptor, rng, deg: int) -> TruncatedSeries:
    """Unit-scale random element: coefficients a_k sqrt(|phi_k|), a_k ~ N(0,1).

    Raw N(0,1) monomial coefficients would put all the mass in high modes,
    where 1/phi_k amplifies rounding by k! and drowns genuine residuals.
    """
    from .core import signs_logs
    _, l = signs_logs(desc, deg)
    a = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    return TruncatedSeries(a * np.exp(0.5 * l[: deg + 1]))


def _suite_duality(cfg: RunConfig) -> list:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for t in range(20):
        deg = int(rng.integers(1, 13))
        f = _random_series(cfg.desc, rng, deg)
        g = _random_series(cfg.desc, rng, deg)
        r = duality_check(cfg.desc, f, g)
        rows.append({"check": f"duality_{t}", "residual": r, "pass": r <= 1e-12})
    return rows


def _suite_bargmann(cfg: RunConfig) -> list:
    if not cfg.desc.entire:
        raise ConfigError("bargmann suite rejects non-entire families")
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for t in range(10):
        c = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        h = HermiteCoeffs(c)
        back = bargmann_inverse(cfg.desc, bargmann_forward(cfg.desc, h))
        rt = float(np.max(np.abs(back.coeffs - h.coeffs)))
        rl, rr = intertwine_residuals(cfg.desc, h)
        ok = rt <= 1e-13 and rl <= 1e-13 and rr <= 1e-13
        rows.append({"check": f"bargmann_{t}", "residual": max(rt, rl, rr), "pass": ok})
    return rows


def _suite_weierstrass(cfg: RunConfig) -> list:
    d = cfg.desc if cfg.desc.normalized else cfg.desc.normalize()
    rows = []
    ps = psi_pair(d)
    rows.append({"check": "psi_finite", "residual": 0.0,
                 "pass": math.isfinite(ps.psi1) and math.isfinite(ps.psi2)})
    xs = np.linspace(-1.0, 1.0, 21)
    zz = (xs[:, None] + 1j * xs[None, :]).ravel()
    zz = zz[np.abs(zz) <= 1.0]
    E = weierstrass_factor(d, zz, cfg.series_N)
    Om = omega(d, zz, cfg.series_N)
    gap = float(np.max(np.abs(1.0 - E) - np.abs(Om)))
    rows.append({"check": "E_inequality_grid", "residual": max(gap, 0.0),
                 "pass": gap <= 1e-10})
    bound = omega_bound(d)
    sup = float(np.max(np.abs(Om)))
    ok = (sup <= bound * (1 + 1e-12)) if math.isfinite(bound) else True
    rows.append({"check": "omega_bound", "residual": max(sup - bound, 0.0) if math.isfinite(bound) else 0.0,
                 "pass": ok})
    return rows


def _suite_reproduce(cfg: RunConfig) -> list:
    if not cfg.desc.entire:
        raise ConfigError("reproduce suite rejects non-entire families")
    wk = _resolve_weight(cfg)
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for t in range(5):
        deg = int(rng.integers(0, 9))
        f = TruncatedSeries(rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1))
        z = complex(*rng.uniform(-1.2, 1.2, size=2))
        got = reproduce(cfg.desc, wk, f, z, quad_scheme=_scheme(cfg))
        r = abs(got - f(z))
        rows.append({"check": f"reproduce_{t}", "residual": float(r), "pass": r <= 1e-6})
    return rows


_SUITES = {
    "moments": _suite_moments,
    "duality": _suite_duality,
    "bargmann": _suite_bargmann,
    "weierstrass": _suite_weierstrass,
    "reproduce": _suite_reproduce,
}


def cmd_check(cfg: RunConfig, args) -> int:
    rows = _SUITES[args.suite](cfg)
    passed = all(r["pass"] for r in rows)
    report = {"suite": args.suite, "family": cfg.desc.family,
              "passed": passed, "rows": rows}
    table = [[r["check"], r["residual"], "pass" if r["pass"] else "FAIL"] for r in rows]
    _emit(cfg, args, ["check", "residual", "status"], table, report)
    if not passed:
        first = next(r for r in rows if not r["pass"])
        print(f"FAILED: {first['check']} residual {first['residual']:.3e}",
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_frames_sweep(cfg: RunConfig, args) -> int:
    if not (0 < args.s_min <= args.s_max):
        raise ConfigError("need 0 < s-min <= s-max")
    if args.steps < 0:
        raise ConfigError("steps must be >= 0")
    wk = _resolve_weight(cfg)
    if args.steps == 0:
        s_values = []
    elif args.steps == 1:
        s_values = [args.s_min]
    else:
        s_values = list(np.linspace(args.s_min, args.s_max, args.steps))
    header = ["s", "A", "B", "condition", "basis_dim", "stability", "status"]
    rows = []
    for s in s_values:
        try:
            rep = frame_sweep(cfg.desc, wk, args.window_n, [s],
                              N=cfg.basis_N, M=args.lattice_m)[0]
            rows.append([float(s), rep.A, rep.B, rep.condition,
                         rep.basis_dim, rep.stability, "ok"])
        except (ValueError, np.linalg.LinAlgError) as e:
            rows.append([float(s), math.nan, math.nan, math.nan,
                         cfg.basis_N + 1, math.nan, f"error:{type(e).__name__}"])
    _emit(cfg, args, header, rows,
          {"s": [r[0] for r in rows], "reports": [dict(zip(header, r)) for r in rows]})
    return EXIT_OK


def cmd_weierstrass_table(cfg: RunConfig, args) -> int:
    d = cfg.desc if cfg.desc.normalized else cfg.desc.normalize()
    wk = _resolve_weight(cfg, verify=False)
    lat = LatticeSpec(args.lam, cfg.lattice_M)
    n = args.grid_n
    h = 2.0 * args.extent / n
    xs = np.linspace(-args.extent + 0.5 * h, args.extent - 0.5 * h, n)
    grid = (xs[:, None] + 1j * xs[None, :]).ravel()
    if np.any(lat.dist(grid) < 1e-9):
        raise ConfigError("grid touches a lattice node; change --grid-n or --extent")
    rep = sigma_lower_diag(d, wk, lat, grid, N=cfg.series_N)
    rows = [[r["z_re"], r["z_im"], r["lhs"], r["rhs"], r["ratio"]] for r in rep.rows]
    _emit(cfg, args, ["z_re", "z_im", "lhs", "rhs", "ratio"], rows,
          {"min_ratio": rep.min_ratio, "feasible": rep.feasible, "rows": rep.rows})
    return EXIT_OK


def cmd_density(cfg: RunConfig, args) -> int:
    try:
        radii = [float(x) for x in args.radii.split(",") if x.strip()]
    except ValueError:
        raise ConfigError("--radii must be a comma-separated list of numbers")
    lat = LatticeSpec(args.lam, args.trunc_m if args.trunc_m else cfg.lattice_M)
    rep = density(lat, radii, norm=args.norm)
    denom = (lambda r: 2.0 * math.pi * r * r) if args.norm == "paper" else (lambda r: r * r)
    rows = [[r, cnt[0], cnt[1], cnt[0] / denom(r), cnt[1] / denom(r)]
            for r, cnt in zip(rep.r_sequence, rep.counts)]
    _emit(cfg, args, ["r", "n_min", "n_max", "d_minus", "d_plus"], rows,
          {"d_plus": rep.d_plus, "d_minus": rep.d_minus, "norm": rep.norm,
           "radii": list(rep.r_sequence), "counts": [list(c) for c in rep.counts]})
    return EXIT_OK


def cmd_bargmann_roundtrip(cfg: RunConfig, args) -> int:
    if not cfg.desc.entire:
        raise ConfigError("bargmann-roundtrip rejects non-entire families")
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for t in range(args.trials):
        c = rng.standard_normal(args.degree + 1) + 1j * rng.standard_normal(args.degree + 1)
        h = HermiteCoeffs(c)
        back = bargmann_inverse(cfg.desc, bargmann_forward(cfg.desc, h))
        rt = float(np.max(np.abs(back.coeffs - h.coeffs)))
        rl, rr = intertwine_residuals(cfg.desc, h)
        rows.append([t, rt, rl, rr])
    _emit(cfg, args, ["trial", "roundtrip_err", "res_lower", "res_raise"], rows,
          {"rows": [dict(zip(["trial", "roundtrip_err", "res_lower", "res_raise"], r))
                    for r in rows]})
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format")
    common.add_argument("--seed", type=int, help="override the config seed")

    p = argparse.ArgumentParser(
        prog="glfock",
        description="Diagnostics for generalized-derivative Fock spaces")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("phi-info", parents=[common],
                   help="family summary: coefficients, order, psi, radii")

    pc = sub.add_parser("check", parents=[common], help="run an assertion suite")
    pc.add_argument("--suite", required=True, choices=sorted(_SUITES))

    pf = sub.add_parser("frames-sweep", parents=[common],
                        help="frame bounds A(s), B(s) over lattice sizes")
    pf.add_argument("--s-min", type=float, default=0.3)
    pf.add_argument("--s-max", type=float, default=1.5)
    pf.add_argument("--steps", type=int, default=13)
    pf.add_argument("--window-n", type=int, default=0)
    pf.add_argument("--lattice-m", type=int, default=10)

    pw = sub.add_parser("weierstrass-table", parents=[common],
                        help="sigma lower-bound ratios on a grid")
    pw.add_argument("--lam", type=float, default=1.0)
    pw.add_argument("--grid-n", type=int, default=16)
    pw.add_argument("--extent", type=float, default=2.0)

    pd = sub.add_parser("density", parents=[common],
                        help="counting densities of the truncated lattice")
    pd.add_argument("--lam", type=float, default=1.0)
    pd.add_argument("--trunc-m", type=int, default=0, help="lattice window (0 = config)")
    pd.add_argument("--radii", default="10,20")
    pd.add_argument("--norm", choices=("paper", "lebesgue"), default="paper")

    pb = sub.add_parser("bargmann-roundtrip", parents=[common],
                        help="transform round-trip residuals")
    pb.add_argument("--degree", type=int, default=12)
    pb.add_argument("--trials", type=int, default=5)
    return p


_COMMANDS = {
    "phi-info": cmd_phi_info,
    "check": cmd_check,
    "frames-sweep": cmd_frames_sweep,
    "weierstrass-table": cmd_weierstrass_table,
    "density": cmd_density,
    "bargmann-roundtrip": cmd_bargmann_roundtrip,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("--seed must be a natural number")
            cfg.seed = args.seed
        return _COMMANDS[args.command](cfg, args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (NonEntireError, DivergenceError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as e:
        print(f"non-convergence: {e}", file=sys.stderr)
        return EXIT_NONCONV


if __name__ == "__main__":
    sys.exit(main())
