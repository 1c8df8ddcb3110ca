#pragma once

// Wavepacket propagation by kernel quadrature, plus the checks that tie the
// kernels back to the Schroedinger equation: the t -> 0 delta limit, the
// finite-difference PDE residual, and the dilation action of exp(-i gamma (xp+px)).

#include "lieprop/grid.hpp"
#include "lieprop/kernels.hpp"
#include "lieprop/params.hpp"

#include <span>
#include <vector>

namespace lieprop::evolve {

/// Normalized Gaussian (pi w^2)^{-1/4} exp(-(x - c)^2 / 2w^2 + i p x / hbar).
struct TestFunction {
    double center = 3.0;
    double width = 0.4;
    double momentum = 0.0;
    /// Overall factor; zero gives the null packet.
    double amplitude = 1.0;

    Complex operator()(double x, const PhysParams& params) const;
    /// center - 4 width > 0.
    bool clear_of_wall() const { return center - 4.0 * width > 0.0; }
    void validate() const;
};

/// Samples on the grid; the wall node of a half-line grid is set to zero.
GridWavefunction sample(const TestFunction& f, const GridSpec& grid, const PhysParams& params);

/// Free evolution of f on the whole line (closed form).
Complex free_gaussian_evolution(const TestFunction& f, double x, double t, const PhysParams& params);

/// Half-line evolution for n = 1/2 without oscillator term: the odd
/// extension of f evolved freely, F(x, t) - F(-x, t).
Complex image_gaussian_evolution(const TestFunction& f, double x, double t, const PhysParams& params);

struct Propagation {
    GridWavefunction psi;
    /// |norm(psi(t)) - norm(psi(0))| / norm(psi(0)); zero for the null state.
    double norm_drift = 0.0;
};

/// psi(x1, t) = integral K(x1, x2, t) psi(x2, 0) dx2 with the trapezoid rule
/// on the wavefunction's own grid; the output lives on the same grid.
/// Radial kernels integrate over x2 > 0 only and need a half-line grid.
Propagation propagate(const GridWavefunction& psi0, double t, kernels::KernelKind kind, const PhysParams& params);
Propagation propagate(const TestFunction& f, const GridSpec& grid, double t, kernels::KernelKind kind,
                      const PhysParams& params);

/// Relative residual |LHS - RHS| / |RHS| of
///   (hbar^2/2m)(-d^2/dx1^2 + (n^2 - 1/4)/x1^2 + m^2 omega^2 x1^2 / hbar^2) K = i hbar dK/dt
/// with central differences of step dx in x1 and dt in t. Full-line kernels
/// drop the inverse-square term; kernels without oscillator drop omega.
double schrodinger_residual(kernels::KernelKind kind, const kernels::KernelPoint& pt, const PhysParams& params,
                            double dx, double dt);

/// |integral K(x1, x2, t) f(x2) dx2 - f(x1)| for each t of a decreasing sequence.
std::vector<double> delta_limit_check(const TestFunction& f, double x1, std::span<const double> t_sequence,
                                      kernels::KernelKind kind, const PhysParams& params);

/// Kernel smeared against f at a single point, by Gauss-Legendre panels
/// over the support of f.
Complex smear_kernel(const TestFunction& f, double x1, double t, kernels::KernelKind kind, const PhysParams& params);

struct Dilation {
    GridWavefunction psi;
    /// L2 size of the difference between two cubic stencils, a proxy for
    /// the interpolation error.
    double interpolation_error = 0.0;
};

/// (U psi)(x) = e^{-hbar gamma} psi(x e^{-2 hbar gamma}) for U = exp(-i gamma (xp + px)),
/// with cubic interpolation. Throws DomainError when the rescaled support
/// leaves the grid.
Dilation dilation_apply(const GridWavefunction& psi, double gamma, const PhysParams& params);

}  // namespace lieprop::evolve
