"""Hermite expansion -> entire-series transform -> back, plus ladder algebra.

Demonstrates that the coefficient transform is an exact rescaling, that the
quadrature route (sampling the signal on a Gauss-Hermite grid) agrees with
the coefficient route, and that raising/lowering operators intertwine with
multiplication and the generalized derivative.
"""

import numpy as np

from glfock.bargmann import (HermiteCoeffs, bargmann_forward, bargmann_inverse,
                             bargmann_sample, intertwine_residuals,
                             ladder_lower, ladder_raise)
from glfock.core import PhiDescriptor

rng = np.random.default_rng(12)


def roundtrip_table():
    print("roundtrip max|c - c_back| over random degree-15 draws")
    for desc in (PhiDescriptor.exponential(normalized=True),
                 PhiDescriptor.mittag_leffler(2, 1, normalized=True),
                 PhiDescriptor.dunkl(0.5, normalized=True)):
        worst = 0.0
        for _ in range(8):
            h = HermiteCoeffs(rng.standard_normal(16) + 1j * rng.standard_normal(16))
            F = bargmann_forward(desc, h)
            back = bargmann_inverse(desc, F)
            worst = max(worst, float(np.max(np.abs(back.coeffs - h.coeffs))))
        print(f"  {desc.family:16s} {worst:.3e}")


def sampled_route():
    print()
    print("coefficient route vs 64-node quadrature sampling of h(x)")
    desc = PhiDescriptor.exponential(normalized=True)
    h = HermiteCoeffs([0.5, 0.0, -0.25, 0.1])

    def signal(x):
        return h(x)

    F_coeff = bargmann_forward(desc, h)
    F_quad = bargmann_sample(desc, signal, N=3)
    print("  max coeff difference:",
          float(np.max(np.abs(F_coeff.coeffs - F_quad.coeffs))))


def ladder_demo():
    print()
    print("ladder operators on the vacuum")
    desc = PhiDescriptor.exponential(normalized=True)
    vac = HermiteCoeffs([1.0])
    up = ladder_raise(desc, vac)
    down = ladder_lower(desc, up)
    print("  raise(vacuum) coeffs:", np.round(up.coeffs, 12))
    print("  lower(raise(vacuum)) coeffs:", np.round(down.coeffs, 12))
    print("  annihilation check, lower(vacuum):",
          ladder_lower(desc, vac).coeffs)

    print()
    print("intertwining residuals (lower ~ derivative, raise ~ multiplier)")
    for desc in (PhiDescriptor.exponential(normalized=True),
                 PhiDescriptor.stretched_gamma(1.0, 2.0, normalized=True)):
        h = HermiteCoeffs(rng.standard_normal(12))
        rl, rr = intertwine_residuals(desc, h)
        print(f"  {desc.family:16s} lower {rl:.3e}  raise {rr:.3e}")


if __name__ == "__main__":
    roundtrip_table()
    sampled_route()
    ladder_demo()
