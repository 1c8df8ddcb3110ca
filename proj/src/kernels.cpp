#include "lieprop/kernels.hpp"

#include "lieprop/errors.hpp"
#include "lieprop/sl2rep.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lieprop::kernels {
namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

std::string describe(const KernelPoint& pt) {
    return "(x1=" + std::to_string(pt.x1) + ", x2=" + std::to_string(pt.x2) + ", t=" + std::to_string(pt.t) + ")";
}

void require_positive_positions(const KernelPoint& pt, std::string_view who) {
    if (!(pt.x1 > 0.0 && pt.x2 > 0.0)) {
        throw DomainError(std::string(who) + ": radial kernels need x1, x2 > 0 " + describe(pt));
    }
}

// Caustic handling shared by every kernel. For omega = 0 the only
// singular time is t = 0.
BranchNote check_time(double t, double omega, bool oscillator, std::string_view who) {
    if (!oscillator || omega == 0.0) {
        if (t == 0.0) throw DomainError(std::string(who) + ": t = 0 is a delta function, not a kernel value");
        return BranchNote::Principal;
    }
    const double s = std::abs(std::sin(omega * t));
    if (s <= kCausticTolerance) {
        throw CausticSingularity(std::string(who) + ": |sin(omega t)| = " + std::to_string(s) +
                                     " is within the caustic tolerance at t = " + std::to_string(t),
                                 nearest_caustic(t, omega));
    }
    return s < kNearCausticFlag ? BranchNote::NearCaustic : BranchNote::Principal;
}

// sqrt(m / (2 pi i hbar tau)) exp(i m ((x1^2 + x2^2) c - 2 x1 x2) / (2 hbar tau)),
// c = cos(omega t). With c = 1 this is the free kernel.
Complex gaussian_form(double x1, double x2, Complex tau, Complex c, const PhysParams& p) {
    const double m = p.mass();
    const double h = p.hbar();
    const Complex prefactor = std::sqrt(m / (2.0 * pi * kI * h * tau));
    const Complex exponent = kI * m * ((x1 * x1 + x2 * x2) * c - 2.0 * x1 * x2) / (2.0 * h * tau);
    return prefactor * std::exp(exponent);
}

// (m sqrt(x1 x2) / (i hbar tau)) I_n(m x1 x2 / (i hbar tau)) exp(i m (x1^2 + x2^2) c / (2 hbar tau)),
// evaluated through the scaled Bessel function so that |Re z| moves into the exponent.
Complex bessel_form(double x1, double x2, Complex tau, Complex c, const PhysParams& p) {
    const double m = p.mass();
    const double h = p.hbar();
    Complex z;
    Complex prefactor;
    if (tau.imag() == 0.0) {
        const double y = m * x1 * x2 / (h * tau.real());
        z = Complex(0.0, -y);
        prefactor = Complex(0.0, -m * std::sqrt(x1 * x2) / (h * tau.real()));
    } else {
        z = m * x1 * x2 / (kI * h * tau);
        prefactor = m * std::sqrt(x1 * x2) / (kI * h * tau);
    }
    const Complex exponent = kI * m * (x1 * x1 + x2 * x2) * c / (2.0 * h * tau) + std::abs(z.real());
    return prefactor * numerics::bessel_i_scaled(p.order(), z) * std::exp(exponent);
}

Complex cos_omega(Complex t, double omega) { return omega > 0.0 ? std::cos(omega * t) : Complex(1.0); }

}  // namespace

std::string_view to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::Free: return "free";
        case KernelKind::Sho: return "sho";
        case KernelKind::RadialH0: return "radial-h0";
        case KernelKind::RadialSho: return "radial-sho";
    }
    return "?";
}

std::optional<KernelKind> parse_kernel_kind(std::string_view name) {
    for (KernelKind k : {KernelKind::Free, KernelKind::Sho, KernelKind::RadialH0, KernelKind::RadialSho}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

std::string_view to_string(RouteId route) {
    switch (route) {
        case RouteId::Direct: return "DIRECT";
        case RouteId::Element: return "ELEMENT";
        case RouteId::A1a: return "A1a";
        case RouteId::A2a: return "A2a";
        case RouteId::A3a: return "A3a";
    }
    return "?";
}

bool is_radial(KernelKind kind) { return kind == KernelKind::RadialH0 || kind == KernelKind::RadialSho; }

double effective_time(double t, double omega) { return omega > 0.0 ? std::sin(omega * t) / omega : t; }

Complex effective_time(Complex t, double omega) { return omega > 0.0 ? std::sin(omega * t) / omega : t; }

double nearest_caustic(double t, double omega) {
    if (omega <= 0.0) return 0.0;
    return std::round(omega * t / pi) * pi / omega;
}

KernelValue free_kernel(const KernelPoint& pt, const PhysParams& params) {
    const BranchNote note = check_time(pt.t, 0.0, false, "free_kernel");
    return {gaussian_form(pt.x1, pt.x2, pt.t, 1.0, params), note};
}

KernelValue sho_kernel(const KernelPoint& pt, const PhysParams& params) {
    const double w = params.omega();
    const BranchNote note = check_time(pt.t, w, true, "sho_kernel");
    return {gaussian_form(pt.x1, pt.x2, effective_time(pt.t, w), cos_omega(pt.t, w), params), note};
}

KernelValue image_kernel(KernelKind kind, const KernelPoint& pt, const PhysParams& params) {
    require_positive_positions(pt, "image_kernel");
    const PhysParams line = kind == KernelKind::RadialH0 ? params.with_omega(0.0) : params;
    const BranchNote note = check_time(pt.t, line.omega(), true, "image_kernel");
    const Complex tau = effective_time(pt.t, line.omega());
    const Complex c = cos_omega(pt.t, line.omega());
    return {gaussian_form(pt.x1, pt.x2, tau, c, line) - gaussian_form(pt.x1, -pt.x2, tau, c, line), note};
}

KernelValue radial_kernel_bessel_form(KernelKind kind, const KernelPoint& pt, const PhysParams& params) {
    if (!is_radial(kind)) throw DomainError("radial_kernel_bessel_form: kind must be radial");
    require_positive_positions(pt, "radial kernel");
    const double w = kind == KernelKind::RadialH0 ? 0.0 : params.omega();
    const BranchNote note = check_time(pt.t, w, true, "radial kernel");
    return {bessel_form(pt.x1, pt.x2, effective_time(pt.t, w), cos_omega(pt.t, w), params), note};
}

KernelValue radial_h0_kernel(const KernelPoint& pt, const PhysParams& params) {
    if (params.order().is_half()) return image_kernel(KernelKind::RadialH0, pt, params);
    return radial_kernel_bessel_form(KernelKind::RadialH0, pt, params);
}

KernelValue radial_sho_kernel(const KernelPoint& pt, const PhysParams& params) {
    if (params.order().is_half()) return image_kernel(KernelKind::RadialSho, pt, params);
    return radial_kernel_bessel_form(KernelKind::RadialSho, pt, params);
}

KernelValue evaluate_kernel(KernelKind kind, const KernelPoint& pt, const PhysParams& params) {
    switch (kind) {
        case KernelKind::Free: return free_kernel(pt, params);
        case KernelKind::Sho: return sho_kernel(pt, params);
        case KernelKind::RadialH0: return radial_h0_kernel(pt, params);
        case KernelKind::RadialSho: return radial_sho_kernel(pt, params);
    }
    throw DomainError("unknown kernel kind");
}

Complex kernel_at_complex_time(KernelKind kind, double x1, double x2, Complex t, const PhysParams& params) {
    if (t == Complex(0.0)) throw DomainError("kernel_at_complex_time: t = 0");
    const double w = (kind == KernelKind::Free || kind == KernelKind::RadialH0) ? 0.0 : params.omega();
    const Complex tau = effective_time(t, w);
    const Complex c = cos_omega(t, w);
    if (!is_radial(kind)) return gaussian_form(x1, x2, tau, c, params);
    if (!(x1 > 0.0 && x2 > 0.0)) throw DomainError("kernel_at_complex_time: radial kernels need x1, x2 > 0");
    return bessel_form(x1, x2, tau, c, params);
}

KernelValue kernel_via_route(RouteId route, const KernelPoint& pt, const PhysParams& params, Domain domain) {
    const KernelKind target = domain == Domain::FullLine ? KernelKind::Sho : KernelKind::RadialSho;
    if (domain == Domain::FullLine && !params.order().is_half()) {
        throw DomainError("kernel_via_route: the full-line route requires lambda = 0 (n = 1/2)");
    }
    if (route == RouteId::Direct) return evaluate_kernel(target, pt, params);
    if (domain == Domain::HalfLine) require_positive_positions(pt, "kernel_via_route");

    const BranchNote note = check_time(pt.t, params.omega(), true, "kernel_via_route");
    sl2::IdentityId identity = sl2::IdentityId::Main;
    switch (route) {
        case RouteId::Element: identity = sl2::IdentityId::Main; break;
        case RouteId::A1a: identity = sl2::IdentityId::A1a; break;
        case RouteId::A2a: identity = sl2::IdentityId::A2a; break;
        case RouteId::A3a: identity = sl2::IdentityId::A3a; break;
        case RouteId::Direct: break;
    }
    const sl2::FactorCoeffs k = sl2::factor_coeffs(identity, pt.t, params);
    const double h = params.hbar();
    const double tau = 2.0 * params.mass() * h * k.beta;

    // The p^2 + lambda/x^2 factor alone: exp(-i H0 tau / hbar).
    const PhysParams free_params = params.with_omega(0.0);
    auto middle = [&](double a, double b) {
        const KernelPoint inner{a, b, tau};
        return domain == Domain::FullLine ? free_kernel(inner, free_params).value
                                          : radial_h0_kernel(inner, free_params).value;
    };
    auto phase = [&](double x) { return std::exp(-kI * k.alpha * x * x); };
    // <x| e^{-i gamma (xp+px)} = e^{-hbar gamma} <x e^{-2 hbar gamma}|
    // e^{-i gamma (xp+px)} |x> = e^{hbar gamma} |x e^{2 hbar gamma}>
    const double shrink = std::exp(-2.0 * h * k.gamma);
    const double grow = std::exp(2.0 * h * k.gamma);

    Complex value;
    switch (route) {
        case RouteId::Element:
            value = phase(pt.x1) * middle(pt.x1, pt.x2) * phase(pt.x2);
            break;
        case RouteId::A1a:
            value = phase(pt.x1) * std::exp(-h * k.gamma) * middle(pt.x1 * shrink, pt.x2);
            break;
        case RouteId::A2a: {
            const double y = pt.x1 * shrink;
            value = std::exp(-h * k.gamma) * phase(y) * middle(y, pt.x2);
            break;
        }
        case RouteId::A3a:
            value = phase(pt.x1) * std::exp(h * k.gamma) * middle(pt.x1, pt.x2 * grow);
            break;
        case RouteId::Direct: break;
    }
    return {value, note};
}

}  // namespace lieprop::kernels
