"""Lattice products generalizing the Weierstrass sigma function.

For a normalized family (phi_0 = 1) the pair

    psi_1 = 1/phi_1,        psi_2 = (phi_1^2 - phi_2) / phi_1^3

makes the elementary factor E(z) = (1 - z) phi(psi_1 z + psi_2 z^2) equal to
1 + O(z^3), the family analogue of the genus-2 Weierstrass factor (classical
case: psi = (1, 1/2), E(z) = (1-z) e^{z + z^2/2}).  Products of such factors
over a square lattice, or over a perturbed lattice Gamma, give entire
functions vanishing exactly on the node set; their growth against the weight
kernel is what the two-sided diagnostics measure.

All lattice products are accumulated as complex logarithms: the truncated
products reach magnitudes ~ e^{800} at the window corners, far outside double
range, while every quantity actually consumed downstream is a ratio.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import PhiDescriptor, phi_coeffs, phi_eval, signs_logs
from .errors import ConvergenceError, DivergenceError, NormalizationError
from .fock import WeightKernel

__all__ = [
    "PsiPair",
    "LatticeSpec",
    "PerturbedLattice",
    "RadiusBounds",
    "psi_pair",
    "e_series",
    "weierstrass_factor",
    "omega",
    "omega_bound",
    "radius_bounds",
    "sigma_fn",
    "g_fn",
    "log_g_fn",
    "sigma_lower_diag",
    "two_sided_diag",
    "lagrange_interp",
    "winding_zero_count",
]

_PHI_PRODUCT_TERMS = 80  # series length inside lattice factors; |arg| stays << 100


# ---------------------------------------------------------------------------
# psi pair and the elementary factor
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PsiPair:
    psi1: float
    psi2: float


def _normalized(desc: PhiDescriptor) -> PhiDescriptor:
    """Accept descriptors that are normalized or already have phi_0 = 1."""
    s, l = signs_logs(desc, 0)
    if desc.normalized or (s[0] == 1.0 and l[0] == 0.0):
        return desc if desc.normalized else desc.normalize()
    raise NormalizationError(
        f"{desc.family}{desc.params_dict} has phi_0 != 1; pass the normalized "
        "descriptor (normalize())")


def _phi123(desc: PhiDescriptor) -> tuple[float, float, float]:
    d = _normalized(desc)
    s, l = signs_logs(d, 3)
    v = s * np.exp(l)
    return float(v[1]), float(v[2]), float(v[3])


def psi_pair(desc: PhiDescriptor) -> PsiPair:
    """Coefficients making (1 - z) phi(psi1 z + psi2 z^2) vanish to 3rd order."""
    p1, p2, _ = _phi123(desc)
    psi1 = 1.0 / p1
    psi2 = (p1 * p1 - p2) / p1**3
    # sanity: degree-1 and degree-2 coefficients of E must cancel exactly
    c1 = p1 * psi1 - 1.0
    c2 = p1 * psi2 + p2 * psi1 * psi1 - p1 * psi1
    scale = 1.0 + abs(psi1) + abs(psi2)
    if max(abs(c1), abs(c2)) > 1e-10 * scale:
        raise ArithmeticError("psi pair failed its third-order cancellation check")
    return PsiPair(psi1, psi2)


def e_series(desc: PhiDescriptor, deg: int) -> np.ndarray:
    """Maclaurin coefficients of E(z) through degree deg (normalized family)."""
    d = _normalized(desc)
    ps = psi_pair(desc)
    phis = phi_coeffs(d, deg)
    comp = np.zeros(deg + 1)
    comp[0] = phis[0]
    power = np.zeros(deg + 1)
    power[0] = 1.0
    base = np.zeros(deg + 1)
    base[1] = ps.psi1
    if deg >= 2:
        base[2] = ps.psi2
    for n in range(1, deg + 1):
        power = np.convolve(power, base)[:deg + 1]
        if not np.any(power):
            break
        comp += phis[n] * power
    out = comp.copy()
    out[1:] -= comp[:-1]
    return out


def weierstrass_factor(desc: PhiDescriptor, z, N: int = 80):
    """E(z) = (1 - z) phi(psi1 z + psi2 z^2), truncating phi at N terms."""
    d = _normalized(desc)
    ps = psi_pair(desc)
    z = np.asarray(z, dtype=complex)
    u = ps.psi1 * z + ps.psi2 * z * z
    return (1.0 - z) * phi_eval(d, u, N)


def omega(desc: PhiDescriptor, z, N: int = 80, series_cutoff: float = 1e-3,
          series_deg: int = 14):
    """Third-order remainder Omega(z) = (E(z) - 1) / z^3.

    Near the origin (|z| < series_cutoff) the direct quotient loses all
    significance, so the Maclaurin branch of E - 1 shifted by three slots is
    used instead; the same branch is the fallback when catastrophic
    cancellation (|E - 1| < 1e-12) is detected farther out.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.shape == ()
    zf = np.atleast_1d(z)
    coeff = e_series(desc, series_deg + 3)[3:]
    out = np.empty_like(zf)
    small = np.abs(zf) < series_cutoff
    if np.any(~small):
        zz = zf[~small]
        E = weierstrass_factor(desc, zz, N)
        direct = (E - 1.0) / zz**3
        cancel = np.abs(E - 1.0) < 1e-12
        if np.any(cancel & (np.abs(zz) >= series_cutoff) & (np.abs(E - 1.0) > 0)):
            warnings.warn("omega: |E - 1| < 1e-12 away from 0; using series branch")
        out_nz = direct
        if np.any(cancel):
            ser = np.zeros_like(zz)
            for c in coeff[::-1]:
                ser = ser * zz + c
            out_nz = np.where(cancel, ser, direct)
        out[~small] = out_nz
    if np.any(small):
        zz = zf[small]
        ser = np.zeros_like(zz)
        for c in coeff[::-1]:
            ser = ser * zz + c
        out[small] = ser
    return complex(out[0]) if scalar else out


def omega_bound(desc: PhiDescriptor, tail_tol: float = 1e-16,
                max_terms: int = 20000) -> float:
    """Disk bound sup_{|z|<=1} |Omega| <= |c3| + |c4| + |c5| + 2 sum_{n>=3} |phi_n| R^n,
    R = |psi1| + |psi2|.

    The three explicit terms are the degree-(3,4,5) coefficients contributed
    by phi_1, phi_2; the tail uses |1 - z| <= 2.  Returns +inf when the tail
    fails to decay (radius-1 family at R = 1); raises if R strictly exceeds
    the series radius.
    """
    d = _normalized(desc)
    p1, p2, _ = _phi123(desc)
    ps = psi_pair(desc)
    R = abs(ps.psi1) + abs(ps.psi2)
    if not d.entire and R > 1.0:
        raise DivergenceError("psi radius exceeds the family's convergence radius")
    c3 = abs(p1 * ps.psi2 - 2.0 * p2 * ps.psi1 * ps.psi2 + p2 * ps.psi1**2)
    c4 = abs(p2 * ps.psi2**2 - 2.0 * p2 * ps.psi1 * ps.psi2)
    c5 = abs(p2 * ps.psi2**2)
    s, l = signs_logs(d, max_terms)
    logR = math.log(R) if R > 0 else -math.inf
    tail = 0.0
    prev = math.inf
    converged = False
    for n in range(3, max_terms + 1):
        t = math.exp(l[n] + n * logR)
        tail += t
        if t < tail_tol * (1.0 + tail):
            converged = True
            break
        if n > 64 and t >= prev * 0.999999:
            return math.inf  # non-decaying tail (radius boundary)
        prev = t
    if not converged:
        return math.inf
    return c3 + c4 + c5 + 2.0 * tail


@dataclass(frozen=True)
class RadiusBounds:
    r_lower: float          # |psi1| + |psi2|
    r_upper: float          # 1 / max_{window} |phi_n|^{1/n}
    upper_flag: str         # "finite" or "unbounded-trend"


def radius_bounds(desc: PhiDescriptor, N: int = 200) -> RadiusBounds:
    """Zero-free radius lower bound and series-radius estimate with trend flag."""
    if N < 16:
        raise ValueError("N too small")
    ps = psi_pair(desc)
    d = _normalized(desc)
    _, l = signs_logs(d, N)
    ns = np.arange(N // 2, N + 1)
    u = np.exp(l[ns] / ns)
    r_upper = float(1.0 / u.max())
    trend = float(u[-1] / u[0])
    flag = "finite" if trend > 0.9 else "unbounded-trend"
    return RadiusBounds(abs(ps.psi1) + abs(ps.psi2), r_upper, flag)


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeSpec:
    """Square lattice lam * (m + i n), |m|, |n| <= trunc_M."""

    lam: float
    trunc_M: int = 16

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError("lam must be positive")
        if self.trunc_M < 1:
            raise ValueError("trunc_M must be >= 1")

    def index_grid(self):
        g = np.arange(-self.trunc_M, self.trunc_M + 1)
        mm, nn = np.meshgrid(g, g, indexing="ij")
        return mm.ravel(), nn.ravel()

    def points(self) -> np.ndarray:
        mm, nn = self.index_grid()
        return self.lam * (mm + 1j * nn)

    def dist(self, z) -> np.ndarray:
        """Distance to the truncated lattice (closed form via rounding)."""
        z = np.asarray(z, dtype=complex)
        m = np.clip(np.round(z.real / self.lam), -self.trunc_M, self.trunc_M)
        n = np.clip(np.round(z.imag / self.lam), -self.trunc_M, self.trunc_M)
        return np.abs(z - self.lam * (m + 1j * n))


class PerturbedLattice:
    """Finite node family z_{m,n} = lam (m + i n) + offset, |offset| <= Q.

    The separation q (minimal pairwise distance) is computed and verified
    positive at construction.
    """

    def __init__(self, lat: LatticeSpec, offsets: Optional[dict] = None, Q: float = 0.0):
        if Q < 0:
            raise ValueError("Q must be >= 0")
        self.lat = lat
        mm, nn = lat.index_grid()
        off = np.zeros(mm.size, dtype=complex)
        if offsets:
            lut = {(int(m), int(n)): i for i, (m, n) in enumerate(zip(mm, nn))}
            for key, val in offsets.items():
                if key not in lut:
                    raise ValueError(f"offset index {key} outside lattice window")
                off[lut[key]] = complex(val)
        if np.any(np.abs(off) > Q):
            raise ValueError("an offset exceeds the stated bound Q")
        self.Q = float(Q)
        self.mm, self.nn = mm, nn
        self.base = lat.lam * (mm + 1j * nn)
        self.pts = self.base + off
        self.q = self._min_separation()
        if not (self.q > 0):
            raise ValueError("perturbed nodes collide: q = 0")

    @classmethod
    def unperturbed(cls, lat: LatticeSpec) -> "PerturbedLattice":
        return cls(lat, None, 0.0)

    @classmethod
    def perturb(cls, lat: LatticeSpec, Q: float, seed: int) -> "PerturbedLattice":
        """Uniform-in-disk offsets of radius < Q, reproducible from seed."""
        rng = np.random.default_rng(seed)
        mm, nn = lat.index_grid()
        r = 0.999 * Q * np.sqrt(rng.uniform(size=mm.size))
        th = rng.uniform(0.0, 2.0 * np.pi, size=mm.size)
        off = r * np.exp(1j * th)
        return cls(lat, {(int(m), int(n)): o for m, n, o in zip(mm, nn, off)}, Q)

    def _min_separation(self) -> float:
        p = self.pts
        best = math.inf
        step = 2048
        for i in range(0, p.size, step):
            blk = p[i:i + step]
            d = np.abs(blk[:, None] - p[None, :])
            d[np.arange(blk.size), np.arange(i, i + blk.size)] = math.inf
            best = min(best, float(d.min()))
        return best

    @property
    def z00(self) -> complex:
        return complex(self.pts[(self.mm == 0) & (self.nn == 0)][0])

    def nonzero(self):
        sel = ~((self.mm == 0) & (self.nn == 0))
        return self.pts[sel], self.base[sel]

    def point(self, m: int, n: int) -> complex:
        sel = (self.mm == m) & (self.nn == n)
        if not sel.any():
            raise KeyError((m, n))
        return complex(self.pts[sel][0])

    def dist(self, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.full(z.size, math.inf)
        step = 1024
        for i in range(0, self.pts.size, step):
            blk = self.pts[i:i + step]
            out = np.minimum(out, np.abs(z[:, None] - blk[None, :]).min(axis=1))
        return out


# ---------------------------------------------------------------------------
# lattice products (log accumulated)
# ---------------------------------------------------------------------------

def _log_product(desc: PhiDescriptor, z: np.ndarray, nodes: np.ndarray,
                 dens: np.ndarray, ps: PsiPair, N: int) -> np.ndarray:
    """sum over nodes of log[(1 - z/node) phi(psi1 z/node + psi2 z^2/den^2)].

    Returns complex logs; -inf real part where z hits a node exactly.
    Chunked so the (nodes x points) temporaries stay modest.
    """
    d = _normalized(desc)
    phis = phi_coeffs(d, N)
    out = np.zeros(z.size, dtype=complex)
    max_cells = 1 << 21
    step = max(1, max_cells // max(1, nodes.size))
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(0, z.size, step):
            zz = z[i:i + step]
            Z1 = zz[None, :] / nodes[:, None]
            U = ps.psi1 * Z1 + ps.psi2 * (zz * zz)[None, :] / (dens[:, None] ** 2)
            V = np.zeros_like(U)
            for c in phis[::-1]:
                V = V * U + c
            lg = np.log(1.0 - Z1)
            hit = (Z1 == 1.0)
            if hit.any():
                lg[hit] = -np.inf
            out[i:i + step] = lg.sum(axis=0) + np.log(V).sum(axis=0)
    return out


def sigma_fn(desc: PhiDescriptor, z, lat: LatticeSpec, N: int = _PHI_PRODUCT_TERMS,
             full_output: bool = False):
    """Truncated sigma-type product z * prod over nonzero lattice points.

    full_output=True also returns the relative change contributed by the
    outermost index ring, a cheap convergence diagnostic for trunc_M.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.shape == ()
    zf = np.atleast_1d(z).astype(complex)
    ps = psi_pair(desc)
    mm, nn = lat.index_grid()
    sel = ~((mm == 0) & (nn == 0))
    nodes = (lat.lam * (mm + 1j * nn))[sel]
    logs = _log_product(desc, zf, nodes, nodes, ps, N)
    with np.errstate(over="ignore"):
        val = zf * np.exp(logs)
    val = np.where(np.isfinite(logs.real), val, 0.0)
    if not full_output:
        return complex(val[0]) if scalar else val
    ring = np.maximum(np.abs(mm), np.abs(nn))[sel] == lat.trunc_M
    ring_logs = _log_product(desc, zf, nodes[ring], nodes[ring], ps, N)
    rel = np.abs(np.exp(ring_logs) - 1.0)
    if scalar:
        return complex(val[0]), float(rel[0])
    return val, rel


def _check_lat(gamma: PerturbedLattice, lat: Optional[LatticeSpec]) -> LatticeSpec:
    if lat is None:
        return gamma.lat
    if lat != gamma.lat:
        raise ValueError("lat is not the base lattice of gamma")
    return lat


def log_g_fn(desc: PhiDescriptor, z, gamma: PerturbedLattice,
             N: int = _PHI_PRODUCT_TERMS, variant: str = "printed",
             lat: Optional[LatticeSpec] = None) -> np.ndarray:
    """Complex log of g(z; Gamma); -inf real part at the nodes.

    variant="printed" uses the mixed quadratic denominator lam_{m,n}^2 (the
    base lattice) inside phi while the linear factor uses the perturbed node;
    variant="all_gamma" uses the perturbed node in both slots.
    """
    if variant not in ("printed", "all_gamma"):
        raise ValueError("variant must be 'printed' or 'all_gamma'")
    _check_lat(gamma, lat)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    ps = psi_pair(desc)
    nodes, base = gamma.nonzero()
    dens = base if variant == "printed" else nodes
    logs = _log_product(desc, z, nodes, dens, ps, N)
    with np.errstate(divide="ignore"):
        return logs + np.log(z - gamma.z00)


def g_fn(desc: PhiDescriptor, z, gamma: PerturbedLattice,
         N: int = _PHI_PRODUCT_TERMS, variant: str = "printed",
         lat: Optional[LatticeSpec] = None):
    """Interpolation-type product vanishing exactly on the perturbed nodes."""
    z = np.asarray(z, dtype=complex)
    scalar = z.shape == ()
    logs = log_g_fn(desc, np.atleast_1d(z), gamma, N, variant, lat)
    with np.errstate(over="ignore"):
        val = np.exp(logs)
    val = np.where(np.isfinite(logs.real), val, 0.0)
    return complex(val[0]) if scalar else val


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

def _write_rows_csv(path: str, rows: list):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=["z_re", "z_im", "lhs", "rhs", "ratio"])
        w.writeheader()
        for r in rows:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})


@dataclass
class SigmaLowerReport:
    rows: list
    min_ratio: float
    feasible: bool

    def write_csv(self, path: str):
        _write_rows_csv(path, self.rows)


def sigma_lower_diag(desc: PhiDescriptor, wk: WeightKernel, lat: LatticeSpec,
                     grid, N: int = _PHI_PRODUCT_TERMS) -> SigmaLowerReport:
    """Per-point ratio W(|z|^2)|sigma(z)| / dist(z, Lambda) over a grid.

    Positivity of the minimum is the numerical shadow of the lower bound
    |K(-|z|^2) sigma(z)| >= c * dist(z, Lambda) near the lattice.
    """
    grid = np.atleast_1d(np.asarray(grid, dtype=complex))
    sig = sigma_fn(desc, grid, lat, N)
    d = lat.dist(grid)
    if np.any(d == 0):
        raise ValueError("grid touches a lattice point; ratio undefined there")
    lhs = wk.weight(np.abs(grid) ** 2) * np.abs(sig)
    ratio = lhs / d
    rows = [{"z_re": float(z.real), "z_im": float(z.imag), "lhs": float(a),
             "rhs": float(b), "ratio": float(c)}
            for z, a, b, c in zip(grid, lhs, d, ratio)]
    mn = float(ratio.min())
    return SigmaLowerReport(rows, mn, mn > 0.0)


@dataclass
class TwoSidedReport:
    c: float
    c1: float
    c2: float
    feasible: bool
    rows: list

    def write_csv(self, path: str):
        _write_rows_csv(path, self.rows)


def two_sided_diag(desc: PhiDescriptor, wk: WeightKernel, gamma: PerturbedLattice,
                   grid, N: int = _PHI_PRODUCT_TERMS, variant: str = "printed",
                   c_grid=None, lat: Optional[LatticeSpec] = None) -> TwoSidedReport:
    """Fit constants for  c1 gam(z) e^{-c|z|log|z|} d(z) <= W|g| <= c2 gam(z) e^{c|z|log|z|}.

    gam(z) is 1 when the weight symbol grows no faster than e^z, else
    |K(z)| itself.  c is chosen on a grid to minimize the log-corridor
    between the two envelopes; c1, c2 are then the extreme admissible
    constants.  Rows carry lhs = lower envelope, rhs = upper envelope and
    ratio = W|g| / rhs (so feasibility means ratio <= 1 and lhs <= W|g|).
    """
    grid = np.atleast_1d(np.asarray(grid, dtype=complex))
    logs = log_g_fn(desc, grid, gamma, N, variant, lat)
    if np.any(~np.isfinite(logs.real)):
        raise ValueError("grid touches a node of Gamma")
    w = wk.weight(np.abs(grid) ** 2)
    if np.any(w <= 0):
        warnings.warn("signed weight in two_sided_diag; using |W|")
        w = np.abs(w)
    logV = np.log(w) + logs.real
    d = gamma.dist(grid)
    az = np.abs(grid)
    t = az * np.log(np.maximum(az, 1e-300))
    if wk.growth_order <= 1.0:
        loggam = np.zeros_like(t)
    else:
        loggam = np.log(np.abs(wk.analytic(grid)))
    low = logV - np.log(d) - loggam
    up = logV - loggam
    if c_grid is None:
        c_grid = np.linspace(0.0, 4.0, 81)
    best = None
    for c in c_grid:
        gap = float((up - c * t).max() - (low + c * t).min())
        if best is None or gap < best[0]:
            best = (gap, float(c))
    c = best[1]
    logc1 = float((low + c * t).min())
    logc2 = float((up - c * t).max())
    c1, c2 = math.exp(logc1), math.exp(logc2)
    lower_env = c1 * np.exp(loggam - c * t) * d
    upper_env = c2 * np.exp(loggam + c * t)
    V = np.exp(logV)
    rows = [{"z_re": float(z.real), "z_im": float(z.imag), "lhs": float(le),
             "rhs": float(ue), "ratio": float(v / ue)}
            for z, le, ue, v in zip(grid, lower_env, upper_env, V)]
    feasible = (np.isfinite([c1, c2]).all() and c1 > 0
                and bool(np.all(V >= lower_env * (1 - 1e-9)))
                and bool(np.all(V <= upper_env * (1 + 1e-9))))
    return TwoSidedReport(c, c1, c2, bool(feasible), rows)


# ---------------------------------------------------------------------------
# interpolation and zero counting
# ---------------------------------------------------------------------------

def lagrange_interp(desc: PhiDescriptor, gamma: PerturbedLattice,
                    g_eval: Optional[Callable], samples: dict, z: complex,
                    M_sum: int, log_g_eval: Optional[Callable] = None,
                    fd_scale: float = 1e-5) -> complex:
    """Cardinal-series value  sum f(z_mn)/g'(z_mn) * g(z)/(z - z_mn).

    samples maps (m, n) -> f(z_mn) for |m|, |n| <= M_sum.  Node derivatives
    use central differences with step fd_scale * q(Gamma).  g_eval=None uses
    the packaged product for desc; when log_g_eval is supplied (complex log
    of g) the term ratios are formed in log space, which they must be: |g'|
    at far nodes exceeds the double range.
    """
    if g_eval is None and log_g_eval is None:
        def log_g_eval(zz):
            return log_g_fn(desc, zz, gamma)
    elif log_g_eval is None:
        def log_g_eval(zz):
            with np.errstate(divide="ignore"):
                return np.log(np.asarray(g_eval(zz), dtype=complex))
    z = complex(z)
    h = fd_scale * gamma.q
    keys = [(m, n) for m in range(-M_sum, M_sum + 1) for n in range(-M_sum, M_sum + 1)]
    missing = [k for k in keys if k not in samples]
    if missing:
        raise ValueError(f"samples missing {len(missing)} node(s), e.g. {missing[0]}")
    nodes = np.array([gamma.point(m, n) for m, n in keys])
    fvals = np.array([complex(samples[k]) for k in keys])
    lp = np.asarray(log_g_eval(nodes + h))
    lm = np.asarray(log_g_eval(nodes - h))
    L = np.maximum(lp.real, lm.real)
    log_gp = L + np.log((np.exp(lp - L) - np.exp(lm - L)) / (2.0 * h))
    if np.any(log_gp.real < -300):
        warnings.warn("near-zero g' at a node; interpolation may be ill-conditioned")
    # exact node hit: every other term carries g(z) = 0
    exact = np.abs(z - nodes) == 0.0
    if exact.any():
        return complex(fvals[exact][0])
    log_gz = complex(np.asarray(log_g_eval(np.array([z])))[0])
    with np.errstate(over="ignore", under="ignore"):
        terms = fvals * np.exp(log_gz - log_gp) / (z - nodes)
    return complex(terms.sum())


def winding_zero_count(fn: Callable, radius: float, center: complex = 0.0,
                       n_start: int = 2048, max_doublings: int = 5) -> int:
    """Zero count inside |z - center| = radius via the argument principle.

    fn must be vectorized and zero-free on the contour.  The contour is
    refined until no single argument step exceeds pi/2; a non-integer
    winding after refinement raises ConvergenceError.
    """
    n = n_start
    for _ in range(max_doublings + 1):
        th = 2.0 * np.pi * np.arange(n + 1) / n
        vals = np.asarray(fn(center + radius * np.exp(1j * th)))
        if np.any(vals == 0) or np.any(~np.isfinite(vals)):
            raise ValueError("contour touches a zero or overflow of fn")
        d = np.diff(np.angle(vals))
        d = (d + np.pi) % (2.0 * np.pi) - np.pi
        if np.abs(d).max() < 0.5 * np.pi:
            wind = d.sum() / (2.0 * np.pi)
            k = round(wind)
            if abs(wind - k) > 1e-2:
                raise ConvergenceError(f"non-integer winding {wind:.6f}")
            return int(k)
        n *= 2
    raise ConvergenceError("contour sampling did not resolve the winding number")
