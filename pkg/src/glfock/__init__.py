"""Fock spaces built on coefficient-rescaling derivatives.

A family of positive weights phi_k defines a derivative D(a_k z^k) =
a_k (phi_{k-1}/phi_k) z^{k-1} (the classical d/dz at phi_k = 1/k!), a
weighted space of entire functions where sqrt(phi_k) z^k is orthonormal,
and a Bargmann-type transform from Hermite expansions.  The package
evaluates these objects numerically: weight-kernel moment identities,
reproducing and duality checks, Weierstrass-style lattice products with
two-sided growth diagnostics, and empirical Gabor frame bounds on
truncated subspaces.
"""

from .core import (PhiDescriptor, TruncatedSeries, gl_derivative,
                   gl_derivative_pow, multiply_z, phi_coeff, phi_coeffs,
                   phi_eval, order_degree_check)
from .fock import (WeightKernel, QuadratureScheme, registered_weight,
                   verified_weight, moment, moment_check, carleman_partial,
                   inner_product_l2phi, inner_product_fock, discrete_kernel,
                   kernel_norm_bound_check, reproduce, duality_check,
                   orthonormal_basis_coeff)
from .bargmann import (HermiteCoeffs, bargmann_forward, bargmann_inverse,
                       bargmann_sample, ladder_raise, ladder_lower,
                       intertwine_residuals)
from .weierstrass import (PsiPair, LatticeSpec, PerturbedLattice, psi_pair,
                          e_series, weierstrass_factor, omega, omega_bound,
                          radius_bounds, sigma_fn, g_fn, log_g_fn,
                          sigma_lower_diag, two_sided_diag, lagrange_interp,
                          winding_zero_count)
from .frames import (DensityReport, FrameReport, GeneralKernelSpec, density,
                     translation_apply, frame_bounds, interpolate_ls,
                     gabor_transform, general_kernel_fockside,
                     adjoint_kernel_coeffs, lattice_size, frame_sweep,
                     kernel_atoms, canonical_dual, biorthogonality_check)
from .errors import (ConvergenceError, DivergenceError, NonEntireError,
                     NormalizationError, UnverifiedWeightError)

__version__ = "0.1.0"
