"""Weighted Fock-space machinery: radial weight kernels, moments, inner products.

A coefficient family phi determines the sequence space with
<f, g> = sum conj(f_k) g_k / phi_k (conjugation on the FIRST slot).  The
planar realization integrates against a radial weight W(x), x = |z|^2:

    <f, g> = (1/pi) int conj(f) g W(|z|^2) dA(z),

and the two agree exactly when the weight's Mellin moments hit
int x^n W(x) dx = 1/phi_n.  Every weight pair is therefore *gated* on a
numerical moment check before it may be used inside an integral.

Only closed-form weights are registered (general Mellin inversion is out of
scope); the registered forms below are verified by forward moments in tests.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

import numpy as np
from numpy.polynomial.laguerre import laggauss
from scipy.integrate import quad

from .core import (PhiDescriptor, TruncatedSeries, gl_derivative, multiply_z,
                   phi_eval, signs_logs)
from .errors import ConvergenceError, UnverifiedWeightError

__all__ = [
    "WeightKernel",
    "QuadratureScheme",
    "MomentReport",
    "registered_weight",
    "verified_weight",
    "default_quadrature",
    "moment",
    "moment_check",
    "carleman_partial",
    "inner_product_l2phi",
    "inner_product_fock",
    "orthonormal_basis_coeff",
    "discrete_kernel",
    "kernel_norm_bound_check",
    "reproduce",
    "duality_check",
]


@dataclass(frozen=True)
class WeightKernel:
    """Radial weight W(x) = K(-x) with a closed-form tag.

    Forms
    -----
    exp            W(x) = exp(-x)                      pairs with exponential
    ml             W(x) = rho x^(rho mu - 1) exp(-x^rho)   pairs with mittag_leffler
    stretched_exp  W(x) = exp(-a x^b)                  pairs with stretched_gamma
    log            W(x) = exp(-x) ln(x)^n              pairs with gamma_deriv
                   (signed on x < 1 for odd n: excluded from positivity-
                   dependent operations, used with an explicit warning)
    """

    desc: PhiDescriptor
    form: str
    params: tuple = ()
    verified: bool = False

    @property
    def params_dict(self) -> dict:
        return dict(self.params)

    @property
    def is_positive(self) -> bool:
        if self.form == "log" and int(self.params_dict["n"]) % 2 == 1:
            return False
        return True

    @property
    def growth_order(self) -> float:
        """Order of the analytically continued K(z) as an entire-type symbol."""
        p = self.params_dict
        return {"exp": 1.0, "ml": p.get("rho", 1.0),
                "stretched_exp": p.get("b", 1.0), "log": 1.0}[self.form]

    def weight(self, x):
        """W(x) on x > 0, vectorized."""
        x = np.asarray(x, dtype=float)
        p = self.params_dict
        if self.form == "exp":
            return np.exp(-x)
        if self.form == "ml":
            rho, mu = p["rho"], p["mu"]
            return rho * x ** (rho * mu - 1.0) * np.exp(-(x ** rho))
        if self.form == "stretched_exp":
            return np.exp(-p["a"] * x ** p["b"])
        if self.form == "log":
            with np.errstate(divide="ignore"):
                return np.exp(-x) * np.log(x) ** int(p["n"])
        raise ValueError(f"unknown weight form {self.form!r}")

    def analytic(self, zeta):
        """K(zeta) continued off the negative axis (used by growth selectors).

        Defined so that analytic(-x) == weight(x) for x > 0; principal powers.
        """
        zeta = np.asarray(zeta, dtype=complex)
        p = self.params_dict
        if self.form == "exp":
            return np.exp(zeta)
        if self.form == "ml":
            rho, mu = p["rho"], p["mu"]
            return rho * (-zeta) ** (rho * mu - 1.0) * np.exp(-((-zeta) ** rho))
        if self.form == "stretched_exp":
            return np.exp(-p["a"] * (-zeta) ** p["b"])
        if self.form == "log":
            return np.exp(zeta) * np.log(-zeta) ** int(p["n"])
        raise ValueError(f"unknown weight form {self.form!r}")


def registered_weight(desc: PhiDescriptor) -> WeightKernel:
    """The closed-form weight registered for desc's family (unverified)."""
    p = desc.params_dict
    if desc.family == "exponential":
        return WeightKernel(desc, "exp")
    if desc.family == "mittag_leffler":
        return WeightKernel(desc, "ml", (("mu", p["mu"]), ("rho", p["rho"])))
    if desc.family == "stretched_gamma":
        return WeightKernel(desc, "stretched_exp", (("a", p["a"]), ("b", p["b"])))
    if desc.family == "gamma_deriv":
        return WeightKernel(desc, "log", (("n", p["n"]),))
    raise ValueError(f"no closed-form weight registered for family {desc.family!r}")


@dataclass(frozen=True)
class QuadratureScheme:
    """Radial x angular product rule for planar integrals in polar form.

    radial = "gauss_laguerre": radial_nodes-point Laguerre rule (exact for
    polynomial-times-exp(-x), i.e. the exponential weight).
    radial = "adaptive_tail": adaptive quadrature split at `cut` with an
    unbounded tail piece (any registered weight).
    Angular integration is the uniform trapezoid rule, exact for
    trigonometric polynomials of degree < angular_nodes.
    """

    radial: str = "gauss_laguerre"
    radial_nodes: int = 80
    cut: float = 10.0
    angular_nodes: int = 64
    tol: float = 1e-9

    def __post_init__(self):
        if self.radial not in ("gauss_laguerre", "adaptive_tail"):
            raise ValueError("radial must be 'gauss_laguerre' or 'adaptive_tail'")
        if not (2 <= self.radial_nodes <= 150):
            raise ValueError("radial_nodes out of range [2, 150]")
        if self.angular_nodes < 2:
            raise ValueError("angular_nodes must be >= 2")
        if self.cut <= 0 or self.tol <= 0:
            raise ValueError("cut and tol must be positive")


def default_quadrature(wk: WeightKernel, max_degree: int = 30) -> QuadratureScheme:
    """Scheme adequate for polynomial data up to max_degree against wk."""
    radial = "gauss_laguerre" if wk.form == "exp" else "adaptive_tail"
    return QuadratureScheme(radial=radial, angular_nodes=2 * max_degree + 2)


@lru_cache(maxsize=32)
def _laggauss(n: int):
    x, w = laggauss(n)
    return x, w


def _radial_integral(wk: WeightKernel, fn, n_poly: int, quad_scheme: QuadratureScheme) -> complex:
    """int_0^inf fn(x) W(x) dx; fn vectorized, possibly complex-valued."""
    if quad_scheme.radial == "gauss_laguerre":
        x, w = _laggauss(quad_scheme.radial_nodes)
        if wk.form == "exp":
            total = w  # exp(x) * exp(-x) folded analytically
        else:
            total = w * np.exp(x) * wk.weight(x)
        vals = np.asarray(fn(x), dtype=complex)
        return complex(np.sum(total * vals))

    def piece(lo, hi, part):
        f = lambda x: part(np.asarray(fn(np.atleast_1d(x)), dtype=complex)[0]
                           * wk.weight(np.atleast_1d(x))[0])
        eps = quad_scheme.tol * 1e-3
        return quad(f, lo, hi, limit=200, epsabs=eps, epsrel=eps)

    val = 0.0 + 0.0j
    err = 0.0
    for lo, hi in ((0.0, quad_scheme.cut), (quad_scheme.cut, np.inf)):
        re, ere = piece(lo, hi, np.real)
        im, eim = piece(lo, hi, np.imag)
        val += re + 1j * im
        err += ere + eim
    if err > max(quad_scheme.tol, quad_scheme.tol * abs(val)) * 10.0:
        raise ConvergenceError(f"radial quadrature error {err:.2e} exceeds tolerance")
    return val


def moment(wk: WeightKernel, n: int, quad_scheme: Optional[QuadratureScheme] = None) -> float:
    """n-th radial moment int_0^inf x^n W(x) dx."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if quad_scheme is None:
        quad_scheme = default_quadrature(wk)
    if not wk.is_positive:
        warnings.warn(f"weight form {wk.form}{wk.params_dict} is signed on part of "
                      "the axis; treat moment results as signed-measure data")
    val = _radial_integral(wk, lambda x: x ** float(n) + 0.0j, n, quad_scheme)
    return float(val.real)


@dataclass
class MomentReport:
    desc: PhiDescriptor
    form: str
    tol: float
    rows: list          # dicts: n, moment, target, residual
    passed: bool
    failures: list      # offending n

    def to_json(self) -> str:
        return json.dumps({
            "family": self.desc.family,
            "params": self.desc.params_dict,
            "weight_form": self.form,
            "tol": self.tol,
            "passed": self.passed,
            "failures": self.failures,
            "rows": self.rows,
        }, sort_keys=True)


def moment_check(desc: PhiDescriptor, wk: WeightKernel, n_max: int, tol: float,
                 quad_scheme: Optional[QuadratureScheme] = None) -> MomentReport:
    """Verify moment(wk, n) * phi_n = 1 for n <= n_max within tol."""
    if quad_scheme is None:
        quad_scheme = default_quadrature(wk, max_degree=n_max)
    s, l = signs_logs(desc, n_max)
    rows, failures = [], []
    for n in range(n_max + 1):
        m = moment(wk, n, quad_scheme)
        target = s[n] * math.exp(-l[n])
        residual = abs(m * s[n] * math.exp(l[n]) - 1.0)
        rows.append({"n": n, "moment": m, "target": target, "residual": residual})
        if not (residual <= tol):
            failures.append(n)
    return MomentReport(desc, wk.form, tol, rows, not failures, failures)


def verified_weight(desc: PhiDescriptor, n_max: int = 10, tol: float = 1e-8,
                    quad_scheme: Optional[QuadratureScheme] = None) -> WeightKernel:
    """registered_weight gated by its moment check; raises if the check fails."""
    wk = registered_weight(desc)
    report = moment_check(desc, wk, n_max, tol, quad_scheme)
    if not report.passed:
        raise UnverifiedWeightError(
            f"weight {wk.form} failed moment check at n={report.failures}")
    return replace(wk, verified=True)


def carleman_partial(desc: PhiDescriptor, N: int) -> float:
    """Partial sum sum_{n=1}^N |phi_n|^(-1/(2n)) (divergence-trend diagnostic)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    _, l = signs_logs(desc, N)
    n = np.arange(1, N + 1)
    return float(np.sum(np.exp(-l[1:] / (2.0 * n))))


def inner_product_l2phi(desc: PhiDescriptor, f: TruncatedSeries, g: TruncatedSeries) -> complex:
    """Coefficient-side pairing sum conj(f_k) g_k / phi_k (conjugate-first)."""
    m = min(f.degree_cap, g.degree_cap)
    s, l = signs_logs(desc, m)
    k = np.arange(m + 1)
    return complex(np.sum(np.conj(f.coeffs[:m + 1]) * g.coeffs[:m + 1]
                          * s[k] * np.exp(-l[k])))


def _require_verified(wk: WeightKernel):
    if not wk.verified:
        raise UnverifiedWeightError(
            "weight kernel must pass moment_check (use verified_weight) "
            "before use in planar integrals")


def _angular_check(quad_scheme: QuadratureScheme, max_degree: int):
    need = 2 * max_degree + 2
    if quad_scheme.angular_nodes < need:
        raise ValueError(
            f"angular_nodes={quad_scheme.angular_nodes} < {need} required for "
            f"polynomial degree {max_degree}")


def inner_product_fock(wk: WeightKernel, f: TruncatedSeries, g: TruncatedSeries,
                       quad_scheme: Optional[QuadratureScheme] = None) -> complex:
    """Planar pairing (1/pi) int conj(f) g W(|z|^2) dA by polar quadrature."""
    _require_verified(wk)
    if not wk.is_positive:
        warnings.warn("signed weight: planar pairing is signed-measure data")
    deg = max(f.degree_cap, g.degree_cap)
    if quad_scheme is None:
        quad_scheme = default_quadrature(wk, deg)
    _angular_check(quad_scheme, deg)
    A = quad_scheme.angular_nodes
    theta = 2.0 * np.pi * np.arange(A) / A
    ephase = np.exp(1j * theta)

    def angular_mean(x):
        r = np.sqrt(np.asarray(x, dtype=float))
        zz = r[:, None] * ephase[None, :]
        return np.mean(np.conj(f(zz)) * g(zz), axis=1)

    return _radial_integral(wk, angular_mean, deg, quad_scheme)


def orthonormal_basis_coeff(desc: PhiDescriptor, n: int) -> float:
    """sqrt(phi_n): e_n(z) = sqrt(phi_n) z^n has unit norm in the pairing."""
    s, l = signs_logs(desc, n)
    if s[n] <= 0:
        raise ValueError(f"phi_{n} < 0 for {desc.family}: orthonormal basis "
                         "undefined for signed coefficients")
    return math.exp(0.5 * l[n])


def discrete_kernel(desc: PhiDescriptor, z: complex, w: complex, N: int) -> complex:
    """Truncated reproducing kernel k(z, w) = phi(conj(z) w)."""
    return phi_eval(desc, np.conj(complex(z)) * complex(w), N)


@dataclass
class NormBoundReport:
    passed: bool
    max_violation: float
    second_checked: bool


def kernel_norm_bound_check(desc: PhiDescriptor, r: float, N: int,
                            tol: float = 1e-12, n_radii: int = 4,
                            n_angles: int = 8) -> NormBoundReport:
    """Check sum phi_n |z|^(2n) <= phi(r^2) on |z| <= r, and -- when the family
    asserts a pointwise (rho, sigma) -- phi(r^2) <= exp(sigma r^(2 rho))."""
    if r < 0:
        raise ValueError("r must be >= 0")
    cap = float(np.real(phi_eval(desc, r * r, N)))
    worst = 0.0
    for rr in np.linspace(r / n_radii, r, n_radii):
        val = float(np.real(phi_eval(desc, rr * rr, N)))
        worst = max(worst, val - cap * (1.0 + tol))
    passed = worst <= 0.0
    second = False
    if desc.rho is not None and desc.sigma is not None:
        second = True
        bound = desc.sigma * r ** (2.0 * desc.rho)
        if math.log(cap) > bound + math.log1p(tol):
            passed = False
            worst = max(worst, math.log(cap) - bound)
    return NormBoundReport(passed, worst, second)


def reproduce(desc: PhiDescriptor, wk: WeightKernel, f: TruncatedSeries, z: complex,
              quad_scheme: Optional[QuadratureScheme] = None) -> complex:
    """Evaluate (1/pi) int conj(k(z, w)) f(w) W(|w|^2) dA(w).

    With a verified weight this returns f(z) up to radial quadrature error;
    the kernel is truncated at f's degree cap, which is exact because higher
    kernel modes integrate to zero against a polynomial.
    """
    _require_verified(wk)
    NK = f.degree_cap
    if quad_scheme is None:
        quad_scheme = default_quadrature(wk, NK)
    _angular_check(quad_scheme, NK)
    A = quad_scheme.angular_nodes
    theta = 2.0 * np.pi * np.arange(A) / A
    ephase = np.exp(1j * theta)
    z = complex(z)

    def angular_mean(x):
        r = np.sqrt(np.asarray(x, dtype=float))
        ww = r[:, None] * ephase[None, :]
        kern = phi_eval(desc, z * np.conj(ww).ravel(), NK).reshape(ww.shape)
        return np.mean(kern * f(ww), axis=1)

    return _radial_integral(wk, angular_mean, NK, quad_scheme)


def duality_check(desc: PhiDescriptor, f: TruncatedSeries, g: TruncatedSeries) -> float:
    """Residual |<z f, g> - <f, D g>| for the coefficient pairing."""
    lhs = inner_product_l2phi(desc, multiply_z(f), g)
    rhs = inner_product_l2phi(desc, f, gl_derivative(desc, g))
    return abs(lhs - rhs)
