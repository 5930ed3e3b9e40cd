import json
import math

import numpy as np
import pytest

from glfock.core import PhiDescriptor, TruncatedSeries, phi_coeff, phi_coeffs
from glfock.errors import UnverifiedWeightError
from glfock.fock import (QuadratureScheme, WeightKernel, carleman_partial,
                         default_quadrature, discrete_kernel, duality_check,
                         inner_product_fock, inner_product_l2phi,
                         kernel_norm_bound_check, moment, moment_check,
                         orthonormal_basis_coeff, registered_weight, reproduce,
                         verified_weight)

EXP = PhiDescriptor.exponential()
ML21 = PhiDescriptor.mittag_leffler(2, 1)
GD1 = PhiDescriptor.gamma_deriv(1)
DK = PhiDescriptor.dunkl(0.5)
BS = PhiDescriptor.backward_shift()


def unit_series(desc, rng, deg):
    """Random combination of the unit vectors sqrt(phi_k) z^k.

    Keeps both sides of every pairing O(1); raw monomial draws would let
    1/phi_k amplify rounding by k! and measure conditioning, not algebra.
    """
    from glfock.core import signs_logs
    _, l = signs_logs(desc, deg)
    a = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    return TruncatedSeries(a * np.exp(0.5 * l[: deg + 1]))


def test_moment_exponential():
    wk = registered_weight(EXP)
    assert abs(moment(wk, 4) - 24.0) <= 1e-10
    assert abs(moment(wk, 0) - 1.0) <= 1e-12


def test_moment_stretched_exp():
    wk = registered_weight(PhiDescriptor.stretched_gamma(1.0, 2.0))
    # int x^2 e^{-x^2} dx = sqrt(pi)/4
    assert abs(moment(wk, 2) - 0.443113462726379) <= 1e-9


def test_moment_check_registered_pairs():
    rep = moment_check(EXP, registered_weight(EXP), 15, 1e-8)
    assert rep.passed and not rep.failures
    rep = moment_check(ML21, registered_weight(ML21), 8, 1e-6)
    assert rep.passed
    assert all(set(r) == {"n", "moment", "target", "residual"} for r in rep.rows)
    obj = json.loads(rep.to_json())
    assert obj["passed"] is True and len(obj["rows"]) == 9


def test_moment_check_mismatched_pair_fails():
    wrong = WeightKernel(EXP, "stretched_exp", (("a", 2.0), ("b", 1.0)))
    rep = moment_check(EXP, wrong, 3, 1e-8)
    assert not rep.passed
    assert rep.failures[0] == 0  # total mass is 1/2, not 1


def test_verified_weight_gate():
    wk = verified_weight(EXP)
    assert wk.verified
    f = TruncatedSeries([1.0, 0.5])
    with pytest.raises(UnverifiedWeightError):
        inner_product_fock(registered_weight(EXP), f, f)
    with pytest.raises(ValueError):
        registered_weight(BS)


def test_log_weight_is_signed():
    wk = registered_weight(GD1)
    assert wk.form == "log"
    assert not wk.is_positive
    with pytest.warns(UserWarning):
        moment(wk, 1)


def test_carleman_partial():
    assert carleman_partial(EXP, 1) == 1.0
    assert carleman_partial(BS, 50) == 50.0
    a, b, c = (carleman_partial(EXP, n) for n in (10, 50, 100))
    assert a < b < c  # divergence trend


def test_inner_product_l2phi_values():
    z2 = TruncatedSeries([0, 0, 1.0])
    assert inner_product_l2phi(EXP, z2, z2) == 2.0
    zero = TruncatedSeries([0.0])
    f = TruncatedSeries([1.0, 2.0, 3.0])
    assert inner_product_l2phi(DK, f, zero) == 0.0
    z1 = TruncatedSeries([0, 1.0])
    # 1/phi_1 = 2 for kappa = 1/2 (Pochhammer oracle)
    assert abs(inner_product_l2phi(DK, z1, z1) - 2.0) <= 1e-14


def test_inner_product_positivity():
    rng = np.random.default_rng(4)
    for desc in (EXP, ML21, DK):
        f = unit_series(desc, rng, 10)
        v = inner_product_l2phi(desc, f, f)
        assert abs(v.imag) <= 1e-14 * abs(v)
        assert v.real > 0
    zero = TruncatedSeries(np.zeros(5))
    assert inner_product_l2phi(EXP, zero, zero) == 0.0


def test_inner_product_fock_values():
    wk = verified_weight(EXP)
    z3 = TruncatedSeries([0, 0, 0, 1.0])
    z2 = TruncatedSeries([0, 0, 1.0])
    assert abs(inner_product_fock(wk, z3, z3) - 6.0) <= 1e-9
    assert abs(inner_product_fock(wk, z2, z3)) <= 1e-12
    wk_ml = verified_weight(ML21, n_max=8, tol=1e-6)
    z1 = TruncatedSeries([0, 1.0])
    assert abs(inner_product_fock(wk_ml, z1, z1) - 0.886226925452758) <= 1e-7


def test_relation_identity_monomials():
    # planar pairing == coefficient pairing on monomial pairs k, n <= 12
    pairs = [(EXP, verified_weight(EXP)),
             (ML21, verified_weight(ML21, n_max=8, tol=1e-6)),
             (PhiDescriptor.stretched_gamma(1.0, 2.0),
              verified_weight(PhiDescriptor.stretched_gamma(1.0, 2.0), n_max=8))]
    for desc, wk in pairs:
        quad = default_quadrature(wk, 12)
        inv_phi_max = 1.0 / min(phi_coeffs(desc, 12))
        for k in range(0, 13, 3):
            for n in range(0, 13, 4):
                f = TruncatedSeries([0.0] * k + [1.0])
                g = TruncatedSeries([0.0] * n + [1.0])
                a = inner_product_fock(wk, f, g, quad)
                b = inner_product_l2phi(desc, f, g)
                assert abs(a - b) <= 1e-7 * inv_phi_max


def test_basis_orthonormality_quadrature():
    wk = verified_weight(EXP)
    quad = default_quadrature(wk, 15)
    for k in range(0, 16, 5):
        for n in range(0, 16, 3):
            ek = TruncatedSeries([0.0] * k + [orthonormal_basis_coeff(EXP, k)])
            en = TruncatedSeries([0.0] * n + [orthonormal_basis_coeff(EXP, n)])
            v = inner_product_fock(wk, ek, en, quad)
            assert abs(v - (1.0 if k == n else 0.0)) <= 1e-7
    wk_ml = verified_weight(ML21, n_max=8, tol=1e-6)
    quad = default_quadrature(wk_ml, 8)
    for n in range(9):
        en = TruncatedSeries([0.0] * n + [orthonormal_basis_coeff(ML21, n)])
        v = inner_product_fock(wk_ml, en, en, quad)
        assert abs(v - 1.0) <= 1e-6


def test_orthonormal_basis_coeff():
    assert abs(orthonormal_basis_coeff(EXP, 2) - 1.0 / math.sqrt(2)) <= 1e-15
    assert orthonormal_basis_coeff(EXP.normalize(), 0) == 1.0
    ml12 = PhiDescriptor.mittag_leffler(1, 2)
    assert abs(orthonormal_basis_coeff(ml12, 1) - 0.7071067811865476) <= 1e-15
    with pytest.raises(ValueError):
        orthonormal_basis_coeff(GD1, 0)  # phi_0 < 0


def test_discrete_kernel():
    z, w = 0.4 + 0.3j, -0.2 + 0.9j
    assert abs(discrete_kernel(EXP, z, w, 60) - np.exp(np.conj(z) * w)) <= 1e-14
    assert discrete_kernel(DK, 0.0, w, 40) == phi_coeff(DK, 0)
    dk1 = PhiDescriptor.dunkl(1.0)
    want = float(np.sum(phi_coeffs(dk1, 80)))
    assert abs(discrete_kernel(dk1, 1.0, 1.0, 80) - want) <= 1e-13


def test_kernel_norm_bound():
    rep = kernel_norm_bound_check(EXP, 2.0, 120)
    assert rep.passed and rep.second_checked
    rep = kernel_norm_bound_check(EXP, 0.0, 10)
    assert rep.passed
    rep = kernel_norm_bound_check(ML21, 1.5, 200)
    assert rep.passed and not rep.second_checked  # no asserted type


def test_reproduce_values():
    wk = verified_weight(EXP)
    f = TruncatedSeries([1.0, 0.0, 1.0])  # 1 + z^2
    z = 0.7 + 0.2j
    assert abs(reproduce(EXP, wk, f, z) - f(z)) <= 1e-9
    zero = TruncatedSeries([0.0])
    assert abs(reproduce(EXP, wk, zero, z)) <= 1e-12
    wk_ml = verified_weight(ML21, n_max=8, tol=1e-6)
    z1 = TruncatedSeries([0.0, 1.0])
    assert abs(reproduce(ML21, wk_ml, z1, 1.0) - 1.0) <= 1e-6


def test_reproduce_random_polys():
    rng = np.random.default_rng(5)
    for desc in (EXP, ML21):
        wk = verified_weight(desc, n_max=8, tol=1e-6)
        for _ in range(5):
            deg = int(rng.integers(0, 11))
            f = unit_series(desc, rng, deg)
            z = complex(*rng.uniform(-1.5 / 1.5, 1.5 / 1.5, 2)) * 1.5
            assert abs(reproduce(desc, wk, f, z) - f(z)) <= 1e-6


def test_duality_examples():
    z1 = TruncatedSeries([0, 1.0])
    z2 = TruncatedSeries([0, 0, 1.0])
    assert duality_check(EXP, z1, z2) == 0.0
    g = TruncatedSeries([1.0, 2.0, 3.0])
    assert duality_check(DK, TruncatedSeries([0.0]), g) == 0.0
    rng = np.random.default_rng(6)
    f = unit_series(GD1, rng, 10)
    g = unit_series(GD1, rng, 10)
    assert duality_check(GD1, f, g) <= 1e-12


def test_duality_random_all_families():
    rng = np.random.default_rng(7)
    for desc in (EXP, ML21, PhiDescriptor.stretched_gamma(1.0, 2.0), GD1, DK, BS):
        for _ in range(20):
            deg = int(rng.integers(1, 13))
            f = unit_series(desc, rng, deg)
            g = unit_series(desc, rng, deg)
            assert duality_check(desc, f, g) <= 1e-12


def test_quadrature_scheme_validation():
    with pytest.raises(ValueError):
        QuadratureScheme(radial="simpson")
    with pytest.raises(ValueError):
        QuadratureScheme(radial_nodes=1)
    with pytest.raises(ValueError):
        QuadratureScheme(angular_nodes=1)
    # angular guard: degree-8 data needs >= 18 angular nodes
    wk = verified_weight(EXP)
    f = TruncatedSeries([0.0] * 8 + [1.0])
    with pytest.raises(ValueError):
        inner_product_fock(wk, f, f, QuadratureScheme(angular_nodes=16))
