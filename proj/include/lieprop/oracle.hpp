#pragma once

// Independent numerical references for the closed-form kernels: the Bessel
// spectral integral over k, and a Crank-Nicolson evolver on a half-line grid.

#include "lieprop/grid.hpp"
#include "lieprop/kernels.hpp"
#include "lieprop/numerics.hpp"
#include "lieprop/params.hpp"

namespace lieprop::oracle {

struct HankelResult {
    Complex value;
    double error_estimate = 0.0;
};

/// Quadrature settings for the spectral integral at one kernel point: k_max
/// puts the damped tail below e^{-40} at the smallest eps and the panels
/// resolve one oscillation each. `epsilon` is capped so that the
/// extrapolation stays within the radius where it is accurate for this point.
numerics::QuadratureSpec hankel_quadrature_spec(const kernels::KernelPoint& pt, const PhysParams& params,
                                                double epsilon = 1e-2, int levels = 3);

/// Set k_max and panel_count to suit the eps schedule already in spec.
void size_hankel_quadrature(numerics::QuadratureSpec& spec, const kernels::KernelPoint& pt, const PhysParams& params);

/// integral_0^inf sqrt(k x1) J_n(k x1) exp(-i hbar k^2 t / 2m) sqrt(k x2) J_n(k x2) dk,
/// regularized with t -> t - i |t| eps and extrapolated to eps = 0.
/// Throws NonConvergence if the estimate exceeds `tolerance`.
HankelResult hankel_kernel_oracle(const kernels::KernelPoint& pt, BesselOrder order, const PhysParams& params,
                                  const numerics::QuadratureSpec& spec,
                                  double tolerance = std::numeric_limits<double>::infinity());

/// Spectral reference for radial_sho_kernel: quadratic phases around the
/// spectral integral at the effective time sin(omega t)/omega.
HankelResult hankel_sho_oracle(const kernels::KernelPoint& pt, const PhysParams& params,
                               const numerics::QuadratureSpec& spec,
                               double tolerance = std::numeric_limits<double>::infinity());

/// hankel_kernel_oracle (omega = 0) or hankel_sho_oracle (omega > 0) with the default
/// quadrature, adding extrapolation levels up to `max_levels` while the error
/// estimate exceeds `relative_estimate` * |value|. Near zeros of the kernel the
/// default three levels leave too little relative accuracy.
HankelResult refined_hankel_oracle(const kernels::KernelPoint& pt, const PhysParams& params,
                                   double relative_estimate = 1e-5, int max_levels = 5);

/// integral_0^{x_max} sqrt(k1 x) J_n(k1 x) sqrt(k2 x) J_n(k2 x) dx.
Complex orthogonality_check(double k1, double k2, BesselOrder order, double x_max);

/// Smear the truncated orthogonality integral against exp(-(k2 - k)^2 / 2 sigma^2)
/// in k2. As x_max grows this recovers the test function at k2 = k, i.e. 1.
double smeared_completeness(double k, double sigma, BesselOrder order, double x_max);

/// Centered second-difference H0 applied to sqrt(k x) J_n(k x) on the grid:
/// max over interior nodes with x >= min_x of |H0 u - E u|, divided by
/// max |E u|, where E = hbar^2 k^2 / 2m.
double eigenfunction_residual(double k, BesselOrder order, const PhysParams& params, const GridSpec& grid,
                              double min_x = 0.0);

struct GridEvolution {
    GridWavefunction psi;
    int steps = 0;
    double max_step_norm_drift = 0.0;
    bool boundary_contaminated = false;
};

/// Fraction of the grid at each open end that is watched for contamination.
inline constexpr double kBoundaryBand = 0.05;
inline constexpr double kBoundaryThreshold = 1e-8;

/// Crank-Nicolson evolution of
///   i hbar dpsi/dt = (hbar^2/2m)(-d^2/dx^2 + (n^2 - 1/4)/x^2 + m^2 omega^2 x^2 / hbar^2) psi
/// with Dirichlet walls at both grid ends. Half-line grids need n >= 1/2;
/// full-line grids (x_min < 0) need lambda = 0.
GridEvolution grid_evolve(const GridWavefunction& psi0, double t_final, const PhysParams& params);

/// True when |psi| in the outer band exceeds kBoundaryThreshold * peak.
bool boundary_contaminated(const GridWavefunction& psi);

}  // namespace lieprop::oracle
