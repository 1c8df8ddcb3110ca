#pragma once

// Closed-form propagators <x1| exp(-i H t / hbar) |x2> for
//   free:        H = p^2/2m
//   sho:         H = p^2/2m + m omega^2 x^2 / 2                 (full line)
//   radial_h0:   H = (p^2 + lambda/x^2)/2m                      (half line)
//   radial_sho:  H = (p^2 + lambda/x^2)/2m + m omega^2 x^2 / 2  (half line)
// with lambda = hbar^2 (n^2 - 1/4), and their reconstruction from the
// factorized evolution operators.
//
// Branches: every square root is the principal one, so that
// sqrt(1/i) = e^{-i pi/4}; I_n takes its principal branch, which on the
// imaginary axis reads I_n(-iy) = e^{-i n pi/2} J_n(y) for y > 0.

#include "lieprop/numerics.hpp"
#include "lieprop/params.hpp"

#include <optional>
#include <string_view>

namespace lieprop::kernels {

/// Default refusal threshold on |sin(omega t)|.
inline constexpr double kCausticTolerance = 1e-8;
/// Below this |sin(omega t)| a value is still returned but flagged.
inline constexpr double kNearCausticFlag = 1e-4;

enum class KernelKind { Free, Sho, RadialH0, RadialSho };
enum class BranchNote { Principal, NearCaustic };
enum class RouteId { Direct, Element, A1a, A2a, A3a };
enum class Domain { FullLine, HalfLine };

std::string_view to_string(KernelKind kind);
std::optional<KernelKind> parse_kernel_kind(std::string_view name);
std::string_view to_string(RouteId route);
bool is_radial(KernelKind kind);

struct KernelPoint {
    double x1 = 0.0;
    double x2 = 0.0;
    double t = 0.0;
};

struct KernelValue {
    Complex value;
    BranchNote branch = BranchNote::Principal;
};

/// sin(omega t)/omega, or t when omega = 0: the time at which the
/// inverse-square problem without oscillator term reproduces the full
/// kernel between quadratic phase factors.
double effective_time(double t, double omega);
Complex effective_time(Complex t, double omega);

KernelValue free_kernel(const KernelPoint& pt, const PhysParams& params);
KernelValue sho_kernel(const KernelPoint& pt, const PhysParams& params);
KernelValue radial_h0_kernel(const KernelPoint& pt, const PhysParams& params);
KernelValue radial_sho_kernel(const KernelPoint& pt, const PhysParams& params);

KernelValue evaluate_kernel(KernelKind kind, const KernelPoint& pt, const PhysParams& params);

/// The Bessel form of a radial kernel without the n = 1/2 image fast path.
KernelValue radial_kernel_bessel_form(KernelKind kind, const KernelPoint& pt, const PhysParams& params);

/// Image-method kernel K(x1 - x2) - K(x1 + x2) built from the free
/// (kind = RadialH0) or oscillator (kind = RadialSho) full-line kernel.
KernelValue image_kernel(KernelKind kind, const KernelPoint& pt, const PhysParams& params);

/// Analytic continuation of each kernel to complex time. For Im t < 0 the
/// kernels decay at large separation, which makes composition integrals
/// absolutely convergent.
Complex kernel_at_complex_time(KernelKind kind, double x1, double x2, Complex t, const PhysParams& params);

/// Rebuild the oscillator kernel from a factorized evolution operator:
/// quadratic phases, the lambda-dependent kernel without oscillator term at
/// time 2 m hbar beta, and the dilation x -> x e^{2 hbar gamma} with
/// amplitude e^{hbar gamma}. FullLine requires lambda = 0 and targets
/// sho_kernel; HalfLine targets radial_sho_kernel.
KernelValue kernel_via_route(RouteId route, const KernelPoint& pt, const PhysParams& params,
                             Domain domain = Domain::HalfLine);

/// Nearest time with sin(omega t) = 0.
double nearest_caustic(double t, double omega);

}  // namespace lieprop::kernels
