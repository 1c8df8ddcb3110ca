#include "lieprop/sl2rep.hpp"

#include "lieprop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lieprop::sl2 {
namespace {

constexpr Complex kI{0.0, 1.0};

// sin(wt)/w, tan(wt)/w and w tan(wt/2) with their w -> 0 limits.
double sin_over_omega(double t, double w) { return w > 0.0 ? std::sin(w * t) / w : t; }
double tan_over_omega(double t, double w) { return w > 0.0 ? std::tan(w * t) / w : t; }

}  // namespace

double Sl2Matrix::max_abs() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }

double Sl2Matrix::operator_norm() const {
    const double frob = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    const double det_sq = std::norm(det());
    const double disc = std::max(0.0, frob * frob - 4.0 * det_sq);
    return std::sqrt(0.5 * (frob + std::sqrt(disc)));
}

Sl2Matrix commutator(const Sl2Matrix& x, const Sl2Matrix& y) { return x * y - y * x; }

std::string_view to_string(IdentityId id) {
    switch (id) {
        case IdentityId::Main: return "MAIN";
        case IdentityId::A1a: return "A1a";
        case IdentityId::A1b: return "A1b";
        case IdentityId::A2a: return "A2a";
        case IdentityId::A2b: return "A2b";
        case IdentityId::A3a: return "A3a";
        case IdentityId::A3b: return "A3b";
    }
    return "?";
}

std::optional<IdentityId> parse_identity(std::string_view name) {
    for (IdentityId id : kAllIdentities) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

Sl2Matrix generator_matrix(GeneratorId id, const PhysParams& params) {
    const double h = params.hbar();
    switch (id) {
        case GeneratorId::X2: return {0.0, 2.0 * h, 0.0, 0.0};
        case GeneratorId::P2L: return {0.0, 0.0, 2.0 * h, 0.0};
        case GeneratorId::D: return {Complex(0.0, -2.0 * h), 0.0, 0.0, Complex(0.0, 2.0 * h)};
    }
    return {};
}

Sl2Matrix exp_traceless(const Sl2Matrix& m) {
    if (std::abs(m.trace()) > 1e-14 * std::max(1.0, m.max_abs())) {
        throw DomainError("exp_traceless: matrix is not traceless (|tr| = " + std::to_string(std::abs(m.trace())) + ")");
    }
    const Complex s_sq = -m.det();
    const Complex s = std::sqrt(s_sq);
    Complex cosh_s;
    Complex sinh_over_s;
    if (std::abs(s) < 1e-3) {
        cosh_s = 1.0 + s_sq / 2.0 * (1.0 + s_sq / 12.0 * (1.0 + s_sq / 30.0));
        sinh_over_s = 1.0 + s_sq / 6.0 * (1.0 + s_sq / 20.0 * (1.0 + s_sq / 42.0));
    } else {
        cosh_s = std::cosh(s);
        sinh_over_s = std::sinh(s) / s;
    }
    return {cosh_s + sinh_over_s * m.a, sinh_over_s * m.b, sinh_over_s * m.c, cosh_s + sinh_over_s * m.d};
}

Sl2Matrix hamiltonian_exponential(double t, const PhysParams& params) {
    const double m = params.mass();
    const double w = params.omega();
    const Sl2Matrix h = Complex(1.0 / (2.0 * m)) * generator_matrix(GeneratorId::P2L, params) +
                        Complex(0.5 * m * w * w) * generator_matrix(GeneratorId::X2, params);
    return exp_traceless(Complex(0.0, -t / params.hbar()) * h);
}

bool within_validity_window(IdentityId id, double t, const PhysParams& params) {
    const double phase = params.omega() * t;
    if (id == IdentityId::Main) return std::abs(std::cos(0.5 * phase)) > 1e-12;
    return std::cos(phase) > 1e-12;
}

FactorCoeffs factor_coeffs(IdentityId id, double t, const PhysParams& params) {
    const double h = params.hbar();
    const double m = params.mass();
    const double w = params.omega();
    const double phase = w * t;
    FactorCoeffs out;
    out.identity = id;

    if (id == IdentityId::Main) {
        if (!within_validity_window(id, t, params)) {
            throw DomainError("factor_coeffs(MAIN): alpha diverges, tan(omega t / 2) is infinite at omega t = " +
                              std::to_string(phase));
        }
        out.alpha = w > 0.0 ? m * w / (2.0 * h) * std::tan(0.5 * phase) : 0.0;
        out.beta = sin_over_omega(t, w) / (2.0 * m * h);
        return out;
    }

    const double cos_phase = std::cos(phase);
    if (!within_validity_window(id, t, params)) {
        throw DomainError("factor_coeffs(" + std::string(to_string(id)) +
                          "): gamma has no real value (cos(omega t) = " + std::to_string(cos_phase) +
                          ", not > 0) and tan(omega t) terms diverge at omega t = " + std::to_string(phase));
    }
    // e^{+-2 gamma hbar} = cos(omega t)
    const double log_cos = std::log(cos_phase);
    const bool conjugate = id == IdentityId::A1b || id == IdentityId::A2b || id == IdentityId::A3b;
    out.gamma = (conjugate ? -log_cos : log_cos) / (2.0 * h);

    const double alpha_tan = w > 0.0 ? m * w / (2.0 * h) * std::tan(phase) : 0.0;
    const double beta_tan = tan_over_omega(t, w) / (2.0 * h * m);
    switch (id) {
        case IdentityId::A1a:
        case IdentityId::A1b:
            out.alpha = alpha_tan;
            out.beta = beta_tan;
            break;
        case IdentityId::A2a:
        case IdentityId::A2b:
            out.alpha = w > 0.0 ? m * w / (2.0 * h) * std::sin(phase) * cos_phase : 0.0;
            out.beta = beta_tan;
            break;
        case IdentityId::A3a:
        case IdentityId::A3b:
            out.alpha = alpha_tan;
            out.beta = sin_over_omega(t, w) * cos_phase / (2.0 * h * m);
            break;
        case IdentityId::Main: break;
    }
    return out;
}

Sl2Matrix factor_product(const FactorCoeffs& coeffs, const PhysParams& params) {
    const Sl2Matrix x2 = exp_traceless(-kI * coeffs.alpha * generator_matrix(GeneratorId::X2, params));
    const Sl2Matrix p2 = exp_traceless(-kI * coeffs.beta * generator_matrix(GeneratorId::P2L, params));
    const Sl2Matrix dil = exp_traceless(-kI * coeffs.gamma * generator_matrix(GeneratorId::D, params));
    switch (coeffs.identity) {
        case IdentityId::Main: return x2 * p2 * x2;
        case IdentityId::A1a: return x2 * dil * p2;
        case IdentityId::A1b: return p2 * dil * x2;
        case IdentityId::A2a: return dil * x2 * p2;
        case IdentityId::A2b: return p2 * x2 * dil;
        case IdentityId::A3a: return x2 * p2 * dil;
        case IdentityId::A3b: return dil * p2 * x2;
    }
    return Sl2Matrix::identity();
}

double identity_residual(IdentityId id, double t, const PhysParams& params) {
    const Sl2Matrix product = factor_product(factor_coeffs(id, t, params), params);
    const Sl2Matrix target = hamiltonian_exponential(t, params);
    return (product - target).max_abs() / target.operator_norm();
}

double adjoint_series_check(const Sl2Matrix& g, const Sl2Matrix& o, int terms) {
    if (terms < 1) throw DomainError("adjoint_series_check requires terms >= 1");
    const Sl2Matrix direct = exp_traceless(g) * o * exp_traceless(Complex(-1.0) * g);
    Sl2Matrix term = o;
    Sl2Matrix sum = o;
    for (int k = 1; k <= terms; ++k) {
        term = Complex(1.0 / k) * commutator(g, term);
        sum = sum + term;
    }
    return (direct - sum).max_abs();
}

}  // namespace lieprop::sl2
