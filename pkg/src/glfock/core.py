"""Coefficient families phi = (phi_k) and the generalized derivative they induce.

A family is a positive (in one documented case, signed) sequence phi_k with
phi(z) = sum phi_k z^k entire (or radius-1 for the backward-shift family).
The derivative D acts on coefficients by

    (D f)_{k-1} = f_k * phi_{k-1} / phi_k ,

so phi itself is its eigenfunction with eigenvalue 1 and the classical
d/dz is recovered for phi_k = 1/k!.  All coefficient ratios are formed in
log space (differences of log-gamma) to stay stable for k in the hundreds.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import special as sps

from .errors import DivergenceError, NonEntireError
from .special import log_gamma_deriv

__all__ = [
    "PhiDescriptor",
    "TruncatedSeries",
    "OrderDegreeReport",
    "phi_coeff",
    "log_phi_coeff",
    "phi_coeffs",
    "gl_derivative",
    "gl_derivative_pow",
    "multiply_z",
    "phi_eval",
    "order_degree_check",
]

_FAMILIES = (
    "exponential",
    "mittag_leffler",
    "stretched_gamma",
    "gamma_deriv",
    "dunkl",
    "backward_shift",
)


@dataclass(frozen=True)
class PhiDescriptor:
    """Tagged coefficient family.

    params is a sorted tuple of (name, value) pairs so descriptors are
    hashable (and hence cacheable); use the factory classmethods rather
    than the bare constructor.  rho/sigma are the asserted growth order
    and type where a pointwise bound phi(r^2) <= exp(sigma r^(2 rho))
    actually holds; families without such a pointwise bound carry None
    and get their order estimated empirically by order_degree_check.
    """

    family: str
    params: tuple = ()
    normalized: bool = False
    rho: Optional[float] = field(default=None, compare=False)
    sigma: Optional[float] = field(default=None, compare=False)
    entire: bool = field(default=True, compare=False)

    # -- factories ---------------------------------------------------------

    @classmethod
    def exponential(cls, normalized: bool = False) -> "PhiDescriptor":
        """phi_k = 1/k! (classical Fock scale)."""
        return cls("exponential", (), normalized, rho=1.0, sigma=1.0)

    @classmethod
    def mittag_leffler(cls, rho: float, mu: float, normalized: bool = False) -> "PhiDescriptor":
        """phi_k = 1/Gamma(mu + k/rho); entire of order rho."""
        if rho <= 0 or mu <= 0:
            raise ValueError("mittag_leffler requires rho > 0, mu > 0")
        return cls("mittag_leffler", (("mu", float(mu)), ("rho", float(rho))),
                   normalized, rho=float(rho), sigma=None)

    @classmethod
    def stretched_gamma(cls, a: float, b: float, normalized: bool = False) -> "PhiDescriptor":
        """phi_k = b a^((k+1)/b) / Gamma((k+1)/b); order b, type a."""
        if a <= 0 or b <= 0:
            raise ValueError("stretched_gamma requires a > 0, b > 0")
        return cls("stretched_gamma", (("a", float(a)), ("b", float(b))),
                   normalized, rho=float(b), sigma=None)

    @classmethod
    def gamma_deriv(cls, n: int, normalized: bool = False) -> "PhiDescriptor":
        """phi_k = 1/Gamma^(n)(k+1).  For n = 1 the k = 0 coefficient is
        negative (Gamma'(1) = -euler_gamma); see the signed-family notes."""
        if n < 1:
            raise ValueError("gamma_deriv requires n >= 1")
        return cls("gamma_deriv", (("n", int(n)),), normalized, rho=None, sigma=None)

    @classmethod
    def dunkl(cls, kappa: float, normalized: bool = False) -> "PhiDescriptor":
        """Rank-one Dunkl kernel coefficients,
        phi_{2m}   = (1/2)_m     / ((2m)!   (kappa+1/2)_m),
        phi_{2m+1} = (1/2)_{m+1} / ((2m+1)! (kappa+1/2)_{m+1})."""
        if kappa <= 0:
            raise ValueError("dunkl requires kappa > 0")
        return cls("dunkl", (("kappa", float(kappa)),), normalized, rho=None, sigma=None)

    @classmethod
    def backward_shift(cls, normalized: bool = False) -> "PhiDescriptor":
        """phi_k = 1: radius-1 family, D becomes the backward shift."""
        return cls("backward_shift", (), normalized, rho=None, sigma=None, entire=False)

    # -- basic props -------------------------------------------------------

    @property
    def params_dict(self) -> dict:
        return dict(self.params)

    @property
    def radius(self) -> float:
        return math.inf if self.entire else 1.0

    def normalize(self) -> "PhiDescriptor":
        return PhiDescriptor(self.family, self.params, True,
                             rho=self.rho, sigma=self.sigma, entire=self.entire)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {"family": self.family, "params": self.params_dict,
                "normalized": self.normalized}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "PhiDescriptor":
        family = d["family"]
        if family not in _FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        params = d.get("params", {})
        normalized = bool(d.get("normalized", False))
        maker = {
            "exponential": lambda: cls.exponential(normalized),
            "mittag_leffler": lambda: cls.mittag_leffler(params["rho"], params["mu"], normalized),
            "stretched_gamma": lambda: cls.stretched_gamma(params["a"], params["b"], normalized),
            "gamma_deriv": lambda: cls.gamma_deriv(params["n"], normalized),
            "dunkl": lambda: cls.dunkl(params["kappa"], normalized),
            "backward_shift": lambda: cls.backward_shift(normalized),
        }[family]
        return maker()

    @classmethod
    def from_json(cls, s: str) -> "PhiDescriptor":
        return cls.from_dict(json.loads(s))


# ---------------------------------------------------------------------------
# coefficient values
# ---------------------------------------------------------------------------

def _raw_signs_logs(desc: PhiDescriptor, ks: np.ndarray):
    """(sign_k, log|phi_k|) for the unnormalized family, vectorized in k."""
    ks = np.asarray(ks, dtype=float)
    fam = desc.family
    p = desc.params_dict
    ones = np.ones_like(ks)
    if fam == "exponential":
        return ones, -sps.gammaln(ks + 1.0)
    if fam == "mittag_leffler":
        return ones, -sps.gammaln(p["mu"] + ks / p["rho"])
    if fam == "stretched_gamma":
        a, b = p["a"], p["b"]
        return ones, math.log(b) + ((ks + 1.0) / b) * math.log(a) - sps.gammaln((ks + 1.0) / b)
    if fam == "backward_shift":
        return ones, np.zeros_like(ks)
    if fam == "dunkl":
        kap = p["kappa"]
        m = np.floor(ks / 2.0)
        odd = (ks.astype(int) % 2).astype(bool)
        mm = np.where(odd, m + 1.0, m)
        logs = (sps.gammaln(0.5 + mm) - sps.gammaln(0.5)
                - sps.gammaln(ks + 1.0)
                - (sps.gammaln(kap + 0.5 + mm) - sps.gammaln(kap + 0.5)))
        return ones, logs
    if fam == "gamma_deriv":
        n = int(p["n"])
        signs = np.empty_like(ks)
        logs = np.empty_like(ks)
        for i, k in enumerate(ks):
            s, la = log_gamma_deriv(n, float(k) + 1.0)
            signs[i] = s
            logs[i] = -la  # phi_k = 1 / Gamma^(n)(k+1)
        return signs, logs
    raise ValueError(f"unknown family {fam!r}")


@lru_cache(maxsize=512)
def _signs_logs_cached(desc: PhiDescriptor, kmax: int):
    ks = np.arange(kmax + 1)
    signs, logs = _raw_signs_logs(desc, ks)
    if desc.normalized:
        signs = signs * signs[0]
        logs = logs - logs[0]
    signs.setflags(write=False)
    logs.setflags(write=False)
    return signs, logs


def signs_logs(desc: PhiDescriptor, kmax: int):
    """Arrays (sign_k, log|phi_k|) for k = 0..kmax."""
    return _signs_logs_cached(desc, int(kmax))


def log_phi_coeff(desc: PhiDescriptor, k: int) -> tuple[float, float]:
    """(sign, log|phi_k|) for a single index."""
    if k < 0:
        raise ValueError("k must be >= 0")
    s, l = signs_logs(desc, k)
    return float(s[k]), float(l[k])


def phi_coeff(desc: PhiDescriptor, k: int) -> float:
    """phi_k as a double.

    Raises OverflowError when |log phi_k| exceeds the representable range
    (for the factorial-type families this happens near k ~ 170/|log10 scale|;
    use log_phi_coeff beyond that).
    """
    s, l = log_phi_coeff(desc, k)
    if abs(l) > 708.0:
        raise OverflowError(f"phi_{k} for {desc.family} outside double range (log={l:.1f})")
    return s * math.exp(l)


def phi_coeffs(desc: PhiDescriptor, kmax: int) -> np.ndarray:
    """Dense float vector (phi_0..phi_kmax); entries beyond the double range
    underflow to 0, which is harmless for the small-argument Horner paths."""
    s, l = signs_logs(desc, kmax)
    with np.errstate(under="ignore"):
        return s * np.exp(np.minimum(l, 700.0))


# ---------------------------------------------------------------------------
# truncated series
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """Polynomial f(z) = sum_{k<=N} f_k z^k; the container is immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a nonempty 1-D sequence")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, *a):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def degree_cap(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return bool(np.all(self.coeffs == 0))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc if acc.shape else complex(acc)

    def pad_to(self, n: int) -> "TruncatedSeries":
        if n <= self.degree_cap:
            return self
        return TruncatedSeries(np.concatenate([self.coeffs, np.zeros(n - self.degree_cap, complex)]))

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"TruncatedSeries(deg<={self.degree_cap}, coeffs={np.array2string(self.coeffs, precision=4)})"


def gl_derivative(desc: PhiDescriptor, f: TruncatedSeries) -> TruncatedSeries:
    """One application of the family derivative: (Df)_{k-1} = f_k phi_{k-1}/phi_k."""
    a = f.coeffs
    if a.size == 1:
        return TruncatedSeries([0.0])
    s, l = signs_logs(desc, f.degree_cap)
    ratio = s[:-1] * s[1:] * np.exp(l[:-1] - l[1:])
    return TruncatedSeries(a[1:] * ratio)


def gl_derivative_pow(desc: PhiDescriptor, f: TruncatedSeries, p: int) -> TruncatedSeries:
    """p-fold derivative in one telescoped step: out_j = f_{j+p} phi_j/phi_{j+p}."""
    if p < 0:
        raise ValueError("power must be >= 0")
    if p == 0:
        return f
    a = f.coeffs
    if a.size <= p:
        return TruncatedSeries([0.0])
    s, l = signs_logs(desc, f.degree_cap)
    j = np.arange(a.size - p)
    ratio = s[j] * s[j + p] * np.exp(l[j] - l[j + p])
    return TruncatedSeries(a[p:] * ratio)


def multiply_z(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplication by the coordinate: shifts coefficients up one slot."""
    return TruncatedSeries(np.concatenate([[0.0 + 0.0j], f.coeffs]))


# ---------------------------------------------------------------------------
# evaluation and growth diagnostics
# ---------------------------------------------------------------------------

def phi_eval(desc: PhiDescriptor, z, N: int, full_output: bool = False):
    """Partial sum sum_{k<=N} phi_k z^k, assembled in log space.

    full_output=True additionally returns the magnitude of the last term as
    a truncation diagnostic.  For the radius-1 family, |z| >= 1 raises
    DivergenceError.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    z = np.asarray(z, dtype=complex)
    scalar = z.shape == ()
    zf = np.atleast_1d(z)
    if not desc.entire and np.any(np.abs(zf) >= 1.0):
        raise DivergenceError("evaluation point outside radius of convergence (=1)")
    s, l = signs_logs(desc, N)
    az = np.abs(zf)
    th = np.angle(zf)
    k = np.arange(N + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        logaz = np.where(az > 0, np.log(np.maximum(az, 1e-300)), -np.inf)
        expo = l[:, None] + k[:, None] * logaz[None, :]      # (N+1, P)
    expo = np.where(np.isnan(expo), -np.inf, expo)
    L = expo.max(axis=0)
    L = np.where(np.isfinite(L), L, 0.0)
    with np.errstate(under="ignore"):
        terms = s[:, None] * np.exp(expo - L[None, :]) * np.exp(1j * k[:, None] * th[None, :])
    val = np.exp(L) * terms.sum(axis=0)
    # z = 0 columns: only k = 0 survives
    zero = az == 0
    if np.any(zero):
        val[zero] = s[0] * math.exp(l[0])
    if full_output:
        with np.errstate(under="ignore"):
            last = np.exp(np.where(zero, -np.inf, expo[-1]))
        if scalar:
            return complex(val[0]), float(last[0])
        return val, last
    return complex(val[0]) if scalar else val


@dataclass(frozen=True)
class OrderDegreeReport:
    rho_hat: float
    sigma_hat: float
    rho_asserted: Optional[float]
    sigma_asserted: Optional[float]
    window: tuple
    max_rel_err: Optional[float]  # vs asserted values, None if nothing asserted


def order_degree_check(desc: PhiDescriptor, K: int = 200) -> OrderDegreeReport:
    """Estimate growth order/type from k^(1/rho)|phi_k|^(1/k) -> (sigma e rho)^(1/rho).

    Writing y_k = -(1/k) log|phi_k| the limit reads y_k ~ (ln k)/rho -
    ln(sigma e rho)/rho; the slowly varying Stirling-type corrections are
    absorbed by (ln k)/k and 1/k regressors, fitted over k in [K/2, K].
    """
    if not desc.entire:
        raise NonEntireError("order/degree defined for entire families only")
    if K < 16:
        raise ValueError("K too small for a stable fit")
    _, l = signs_logs(desc, K)
    ks = np.arange(max(4, K // 2), K + 1, dtype=float)
    y = -l[ks.astype(int)] / ks
    X = np.column_stack([np.log(ks), np.ones_like(ks), np.log(ks) / ks, 1.0 / ks])
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    slope, intercept = float(coef[0]), float(coef[1])
    if slope <= 0:
        raise ValueError("non-positive slope: coefficients do not decay like an entire family")
    rho_hat = 1.0 / slope
    sigma_hat = math.exp(-intercept * rho_hat) / (math.e * rho_hat)
    max_rel = None
    if desc.rho is not None:
        max_rel = abs(rho_hat - desc.rho) / desc.rho
        if desc.sigma is not None:
            max_rel = max(max_rel, abs(sigma_hat - desc.sigma) / desc.sigma)
    return OrderDegreeReport(rho_hat, sigma_hat, desc.rho, desc.sigma,
                             (int(ks[0]), K), max_rel)
