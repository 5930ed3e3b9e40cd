"""Densities, sampling numerics, and Gabor-type frames on truncated spaces.

The frame machinery restricts the space to span{e_0 .. e_N} with
e_m = sqrt(phi_m) z^m and realizes sampling inequalities

    A ||f||^2 <= sum_j w_j W(|z_j|^2) |f(z_j)|^2 <= B ||f||^2

as extreme eigenvalues of the (N+1)x(N+1) Gram of the weighted evaluation
matrix.  Reports carry the relative change from N-1 to N so the finite
truncation can be judged: frame bounds that keep drifting as N grows are an
artifact of the cut, a collapsing lower bound signals genuine undersampling.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.special import comb

from .core import (PhiDescriptor, TruncatedSeries, gl_derivative_pow,
                   gl_derivative, multiply_z, phi_eval, signs_logs)
from .errors import NonEntireError
from .fock import WeightKernel
from .weierstrass import LatticeSpec, PerturbedLattice

__all__ = [
    "DensityReport",
    "FrameReport",
    "GeneralKernelSpec",
    "density",
    "translation_apply",
    "frame_bounds",
    "interpolate_ls",
    "gabor_transform",
    "general_kernel_fockside",
    "adjoint_kernel_coeffs",
    "lattice_size",
    "frame_sweep",
    "kernel_atoms",
    "canonical_dual",
    "biorthogonality_check",
    "BiorthReport",
]


def _as_points(obj) -> np.ndarray:
    if isinstance(obj, LatticeSpec):
        return obj.points()
    if isinstance(obj, PerturbedLattice):
        return obj.pts
    return np.atleast_1d(np.asarray(obj, dtype=complex))


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityReport:
    d_plus: float
    d_minus: float
    r_sequence: tuple
    counts: tuple          # per radius: (n_min, n_max)
    norm: str

    def __post_init__(self):
        if self.d_minus > self.d_plus + 1e-15:
            raise ValueError("d_minus exceeds d_plus")


def density(points, radii: Sequence[float], norm: str = "paper",
            n_scan: int = 24) -> DensityReport:
    """Lower/upper counting densities from square-window translates.

    For each r the half-open square [x0, x0+r) x [y0, y0+r) slides over a
    grid of n_scan^2 origins inside the stored point set; the extreme counts
    at the largest radius give the densities.  norm="paper" divides by
    2 pi r^2, norm="lebesgue" by the window area r^2.
    """
    if norm not in ("paper", "lebesgue"):
        raise ValueError("norm must be 'paper' or 'lebesgue'")
    radii = [float(r) for r in radii]
    if not radii or any(r <= 0 for r in radii):
        raise ValueError("radii must be positive")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    pts = _as_points(points)
    if pts.size == 0:
        counts = tuple((0, 0) for _ in radii)
        return DensityReport(0.0, 0.0, tuple(radii), counts, norm)
    x, y = pts.real, pts.imag
    xmin, xmax = float(x.min()), float(x.max())
    ymin, ymax = float(y.min()), float(y.max())
    counts = []
    for r in radii:
        if r > (xmax - xmin) or r > (ymax - ymin):
            raise ValueError(
                f"window side {r} exceeds the stored point extent; enlarge the set")
        n_min, n_max = None, None
        for x0 in np.linspace(xmin, xmax - r, n_scan):
            inx = (x >= x0) & (x < x0 + r)
            xs, ys = x[inx], y[inx]
            for y0 in np.linspace(ymin, ymax - r, n_scan):
                c = int(np.count_nonzero((ys >= y0) & (ys < y0 + r)))
                n_min = c if n_min is None else min(n_min, c)
                n_max = c if n_max is None else max(n_max, c)
        counts.append((n_min, n_max))
    r = radii[-1]
    denom = 2.0 * math.pi * r * r if norm == "paper" else r * r
    n_min, n_max = counts[-1]
    return DensityReport(n_max / denom, n_min / denom, tuple(radii),
                         tuple(counts), norm)


# ---------------------------------------------------------------------------
# weighted translations
# ---------------------------------------------------------------------------

def translation_apply(wk: WeightKernel, a: complex, f, z):
    """(T_a f)(z) = sqrt(W(|z-a|^2) / W(|z|^2)) * f(z - a).

    The square-root quotient makes T_a unitary on the weighted space; the
    weight must be strictly positive at the evaluation points.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.shape == ()
    zf = np.atleast_1d(z)
    wz = wk.weight(np.abs(zf) ** 2)
    if np.any(wz <= 0):
        raise ZeroDivisionError("weight vanishes at an evaluation point")
    wa = wk.weight(np.abs(zf - a) ** 2)
    vals = np.sqrt(wa / wz) * np.asarray(f(zf - a), dtype=complex)
    return complex(vals[0]) if scalar else vals


# ---------------------------------------------------------------------------
# frame bounds on the truncated space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrameReport:
    A: float
    B: float
    condition: float
    basis_dim: int
    n_points: int
    stability: float

    def __post_init__(self):
        if self.A > self.B + 1e-12 * max(1.0, self.B):
            raise ValueError("frame report with A > B")


def _basis_matrix(desc: PhiDescriptor, z: np.ndarray, N: int) -> np.ndarray:
    """Rows e_m(z_j) = sqrt(phi_m) z_j^m, assembled in log space."""
    s, l = signs_logs(desc, N)
    if np.any(s[: N + 1] <= 0):
        raise ValueError("orthonormal basis needs positive phi coefficients")
    m = np.arange(N + 1)
    az = np.abs(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        logmag = 0.5 * l[None, : N + 1] + m[None, :] * np.log(az[:, None])
    E = np.exp(logmag) * np.exp(1j * m[None, :] * np.angle(z)[:, None])
    zero = az == 0
    if zero.any():
        E[zero, :] = 0.0
        E[zero, 0] = math.exp(0.5 * l[0])
    return E


def _eig_report(V: np.ndarray, n_points: int, N: int) -> FrameReport:
    S = V.conj().T @ V
    ev = np.linalg.eigvalsh(S)
    A, B = max(float(ev[0]), 0.0), max(float(ev[-1]), 0.0)
    Ssub = S[:N, :N]
    evs = np.linalg.eigvalsh(Ssub)
    As, Bs = max(float(evs[0]), 0.0), max(float(evs[-1]), 0.0)
    tiny = 1e-300
    stability = max(abs(A - As) / max(A, tiny), abs(B - Bs) / max(B, tiny))
    condition = B / A if A > 0 else math.inf
    return FrameReport(A, B, condition, N + 1, n_points, stability)


def _check_weight(wk: WeightKernel):
    if not wk.is_positive:
        raise ValueError("frame diagnostics need a positive weight kernel")
    if not wk.verified:
        raise ValueError("weight kernel not verified; run verified_weight first")


def frame_bounds(desc: PhiDescriptor, wk: WeightKernel, points, N: int,
                 weights=None) -> FrameReport:
    """Extreme eigenvalues of S_mn = sum_j w_j W(|z_j|^2) conj(e_m) e_n (z_j).

    weights defaults to 1 per point; pass quadrature weights to mimic the
    continuous measure (then S approximates pi times the identity).
    """
    _check_weight(wk)
    z = _as_points(points)
    if z.size == 0:
        return FrameReport(0.0, 0.0, math.inf, N + 1, 0, 0.0)
    w = np.ones(z.size) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != z.shape or np.any(w <= 0):
        raise ValueError("weights must be positive, one per point")
    E = _basis_matrix(desc, z, N)
    V = np.sqrt(w * wk.weight(np.abs(z) ** 2))[:, None] * E
    return _eig_report(V, z.size, N)


def interpolate_ls(desc: PhiDescriptor, wk: WeightKernel, points, values,
                   N: int, ridge: float = 1e-12) -> TruncatedSeries:
    """Weighted least-squares fit of a degree-N series to point values.

    Minimizes sum_j W(|z_j|^2)|f(z_j) - a_j|^2 + mu ||f||^2 with
    mu = ridge * trace-scale, so under-determined systems return the
    minimum-norm interpolant (single point -> kernel column).
    """
    _check_weight(wk)
    z = _as_points(points)
    a = np.atleast_1d(np.asarray(values, dtype=complex))
    if z.size == 0:
        raise ValueError("need at least one point")
    if a.shape != z.shape:
        raise ValueError("values must match points")
    E = _basis_matrix(desc, z, N)
    sw = np.sqrt(wk.weight(np.abs(z) ** 2))
    V = sw[:, None] * E
    b = sw * a
    # ridge solve via the SVD-backed augmented system; plain normal equations
    # square the condition number and pollute the null directions
    mu = ridge * max(float(np.sum(np.abs(V) ** 2)) / (N + 1), 1e-300)
    A_aug = np.vstack([V, math.sqrt(mu) * np.eye(N + 1)])
    b_aug = np.concatenate([b, np.zeros(N + 1, complex)])
    c = np.linalg.lstsq(A_aug, b_aug, rcond=None)[0]
    resid = float(np.linalg.norm(V @ c - b))
    scale = float(np.linalg.norm(b))
    if z.size <= N + 1 and resid > 1e-6 * max(scale, 1.0):
        warnings.warn(f"rank-deficient interpolation; achieved residual {resid:.3e}")
    s, l = signs_logs(desc, N)
    return TruncatedSeries(c * np.exp(0.5 * l[: N + 1]))


# ---------------------------------------------------------------------------
# Gabor-type transform and operator-word kernels
# ---------------------------------------------------------------------------

def gabor_transform(desc: PhiDescriptor, n: int, F: TruncatedSeries, z,
                    N: int = 80):
    """Window-n transform of the transformed signal F.

    V(z) = e^{i pi x y} / sqrt(pi^n phi_n) * phi(|z|^2/2)^{-1}
           * sum_k C(n,k) (-pi conj(z))^k (D^k F)(z),   z = x + i y.
    """
    if not desc.entire:
        raise NonEntireError("gabor transform needs an entire family")
    if n < 0:
        raise ValueError("n must be a natural number")
    s, l = signs_logs(desc, n)
    if s[n] <= 0:
        raise ValueError("phi_n must be positive for the window normalization")
    z = np.asarray(z, dtype=complex)
    scalar = z.shape == ()
    zf = np.atleast_1d(z)
    norm = math.sqrt(math.pi ** n * math.exp(l[n]))
    denom = phi_eval(desc, 0.5 * np.abs(zf) ** 2, N)
    acc = np.zeros_like(zf)
    for k in range(n + 1):
        dk = gl_derivative_pow(desc, F, k)
        acc = acc + comb(n, k, exact=True) * (-math.pi * np.conj(zf)) ** k * dk(zf)
    phase = np.exp(1j * math.pi * zf.real * zf.imag)
    out = phase / norm / denom * acc
    return complex(out[0]) if scalar else out


@dataclass(frozen=True)
class GeneralKernelSpec:
    """Coefficients c_0..c_J of sum_j c_j (conj(z) M + z D)^j."""
    c: tuple
    n_window: int = 0

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(complex(v) for v in self.c))
        if len(self.c) == 0:
            raise ValueError("at least one coefficient required")


def general_kernel_fockside(desc: PhiDescriptor, spec: GeneralKernelSpec,
                            z: complex, N: int) -> TruncatedSeries:
    """Apply sum_j c_j (conj(z) M_w + z D)^j to the constant series 1.

    The operator word is expanded by repeated application (M_w and D do not
    commute), never by a scalar binomial shortcut.
    """
    J = len(spec.c) - 1
    if 2 * J > N:
        raise ValueError("degree cap overflow: need 2*J <= N")
    z = complex(z)
    cur = TruncatedSeries([1.0])
    total = np.zeros(J + 1, dtype=complex)
    total[0] = spec.c[0]
    for j in range(1, J + 1):
        up = multiply_z(cur).pad_to(j)
        down = gl_derivative(desc, cur).pad_to(j)
        cur = TruncatedSeries(np.conj(z) * up.coeffs + z * down.coeffs)
        total[: j + 1] += spec.c[j] * cur.coeffs
    return TruncatedSeries(total)


def adjoint_kernel_coeffs(desc: PhiDescriptor, n: int, J: int) -> np.ndarray:
    """Series coefficients a_j = sum_k C(n,k)(-pi)^k phi_j^2 / phi_{j+k}."""
    if not desc.entire:
        raise NonEntireError("adjoint kernel needs an entire family")
    s, l = signs_logs(desc, J + n)
    out = np.zeros(J + 1)
    for j in range(J + 1):
        acc = 0.0
        for k in range(n + 1):
            ratio = s[j] * s[j] * s[j + k] * math.exp(2.0 * l[j] - l[j + k])
            acc += comb(n, k, exact=True) * (-math.pi) ** k * ratio
        out[j] = acc
    return out


def lattice_size(C) -> tuple[float, float]:
    """Size |det C| of the lattice C Z^2 and the adjoint rescaling 1/s."""
    C = np.asarray(C, dtype=float)
    if C.shape != (2, 2):
        raise ValueError("C must be a 2x2 real matrix")
    s = abs(float(np.linalg.det(C)))
    if s == 0.0:
        raise ValueError("singular generator matrix")
    return s, 1.0 / s


# ---------------------------------------------------------------------------
# frame sweep over lattice sizes
# ---------------------------------------------------------------------------

def _sample_matrix(desc: PhiDescriptor, w: np.ndarray, N: int, window_n: int) -> np.ndarray:
    """Rows L_j(e_m) = sum_k C(n,k)(-pi conj(w_j))^k (D^k e_m)(w_j)."""
    s, l = signs_logs(desc, N)
    if np.any(s[: N + 1] <= 0):
        raise ValueError("sampling functionals need positive phi coefficients")
    m = np.arange(N + 1)
    aw = np.abs(w)
    th = np.angle(w)
    out = np.zeros((w.size, N + 1), dtype=complex)
    for k in range(window_n + 1):
        live = m >= k
        mk = m[live] - k
        # (D^k e_m)(w) = (phi_{m-k} / sqrt(phi_m)) w^{m-k}
        coef = np.exp(l[mk] - 0.5 * l[m[live]])
        with np.errstate(divide="ignore", invalid="ignore"):
            logmag = mk[None, :] * np.log(aw[:, None])
        block = coef[None, :] * np.exp(logmag) * np.exp(1j * mk[None, :] * th[:, None])
        zero = aw == 0
        if zero.any():
            block[zero, :] = 0.0
            if mk.size and mk[0] == 0:
                block[zero, 0] = coef[0]
        pref = comb(window_n, k, exact=True) * (-math.pi * np.conj(w)) ** k
        out[:, live] += pref[:, None] * block
    return out


def frame_sweep(desc: PhiDescriptor, wk: WeightKernel, window_n: int,
                s_values: Sequence[float], N: int, M: int) -> list[FrameReport]:
    """Frame bounds of window-n Gabor samples mapped to Fock-side sampling.

    For lattice size s the Fock-side nodes are sqrt(pi s)(m + i n),
    |m|, |n| <= M; each carries the squared transform weight
    W(|w|^2) / (pi^n phi_n).  Returns one FrameReport per s: the empirical
    break of A(s) under N-refinement locates the critical size (classic
    calibration: s = 1).
    """
    _check_weight(wk)
    if window_n < 0:
        raise ValueError("window_n must be a natural number")
    sN, lN = signs_logs(desc, window_n)
    if sN[window_n] <= 0:
        raise ValueError("phi_{window_n} must be positive")
    win_norm = math.pi ** window_n * math.exp(lN[window_n])
    g = np.arange(-M, M + 1)
    mm, nn = [a.ravel() for a in np.meshgrid(g, g, indexing="ij")]
    reports = []
    for s in s_values:
        if s <= 0:
            raise ValueError("lattice size must be positive")
        w = math.sqrt(math.pi * s) * (mm + 1j * nn)
        omega = wk.weight(np.abs(w) ** 2) / win_norm
        L = _sample_matrix(desc, w, N, window_n)
        V = np.sqrt(omega)[:, None] * L
        reports.append(_eig_report(V, w.size, N))
    return reports


# ---------------------------------------------------------------------------
# biorthogonality at adjoint lattice points
# ---------------------------------------------------------------------------

def kernel_atoms(desc: PhiDescriptor, wk: WeightKernel, zs, N: int,
                 n: int = 0) -> np.ndarray:
    """Coordinate rows of weighted window-n kernel atoms at the points zs.

    Row p-th entry: sqrt(W(|z|^2)) a_p conj(z)^p with a_p the adjoint kernel
    coefficients; for n = 0 the atom is the plain reproducing kernel.
    """
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    a = adjoint_kernel_coeffs(desc, n, N)
    p = np.arange(N + 1)
    az = np.abs(zs)
    with np.errstate(divide="ignore", invalid="ignore"):
        logmag = p[None, :] * np.log(az[:, None])
    Z = np.exp(logmag) * np.exp(-1j * p[None, :] * np.angle(zs)[:, None])
    zero = az == 0
    if zero.any():
        Z[zero, :] = 0.0
        Z[zero, 0] = 1.0
    return np.sqrt(wk.weight(az ** 2))[:, None] * (a[None, :] * Z)


def canonical_dual(desc: PhiDescriptor, wk: WeightKernel, s: float, M: int,
                   N: int, n: int = 0) -> np.ndarray:
    """Dual atom coordinates from inverting the truncated frame operator.

    Solves S gamma = (atom at 0) with S built from the weighted atoms on the
    Fock lattice of size s, then scales gamma so its pairing with the atom
    at the origin is exactly 1.
    """
    w0 = wk.weight(0.0)
    if not (np.isfinite(w0) and w0 > 0):
        raise ValueError("weight must be finite and positive at the origin")
    g = np.arange(-M, M + 1)
    mm, nn = [a.ravel() for a in np.meshgrid(g, g, indexing="ij")]
    zj = math.sqrt(math.pi * s) * (mm + 1j * nn)
    Kw = kernel_atoms(desc, wk, zj, N, n)
    S = Kw.T @ Kw.conj()
    rhs = kernel_atoms(desc, wk, np.array([0.0 + 0.0j]), N, n)[0]
    gam = np.linalg.solve(S, rhs)
    c0 = np.vdot(rhs, gam)
    if c0 == 0:
        raise ValueError("degenerate dual: zero pairing at the origin")
    return gam / c0


@dataclass(frozen=True)
class BiorthReport:
    rows: tuple            # (mu_re, mu_im, value, expected, abs_err)
    max_residual: float
    n_points: int


def biorthogonality_check(desc: PhiDescriptor, wk: WeightKernel,
                          kernel_samples: np.ndarray, dual_candidate: np.ndarray,
                          adjoint_points) -> BiorthReport:
    """max over adjoint points of |<atom(mu), gamma> - delta_{mu,0}|.

    kernel_samples holds one atom coordinate row per adjoint point (build
    with kernel_atoms); dual_candidate is the coordinate vector gamma.  The
    pairing is conjugate-in-the-first-slot; expected value 1 at mu = 0 and 0
    elsewhere.
    """
    mus = np.atleast_1d(np.asarray(adjoint_points, dtype=complex))
    K = np.asarray(kernel_samples, dtype=complex)
    gam = np.asarray(dual_candidate, dtype=complex)
    if K.shape != (mus.size, gam.size):
        raise ValueError("kernel_samples must be (n_points, len(gamma))")
    vals = K.conj() @ gam
    expected = np.where(mus == 0, 1.0, 0.0)
    errs = np.abs(vals - expected)
    rows = tuple((float(m.real), float(m.imag), complex(v), float(e), float(r))
                 for m, v, e, r in zip(mus, vals, expected, errs))
    return BiorthReport(rows, float(errs.max()), mus.size)
