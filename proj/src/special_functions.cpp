#include "lieprop/errors.hpp"
#include "lieprop/numerics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lieprop {

BesselOrder::BesselOrder(double n) : n_(n) {
    if (!std::isfinite(n) || n < 0.0) {
        throw DomainError("Bessel order must be finite and >= 0, got " + std::to_string(n));
    }
}

namespace numerics {
namespace {

using std::numbers::pi;

// Lanczos approximation, g = 7, 9 coefficients.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double x) {
    double sum = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (x + static_cast<double>(i));
    return sum;
}

// Hankel asymptotic coefficients a_k(nu) / w^k accumulate until the terms
// stop decreasing. Half-integer orders terminate exactly.
template <typename T, typename Visit>
void asymptotic_terms(double nu, T w, Visit&& visit) {
    const double mu = 4.0 * nu * nu;
    T term = T(1.0);
    double previous = std::numeric_limits<double>::infinity();
    visit(0, term);
    for (int k = 1; k < 80; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k) / w;
        const double magnitude = std::abs(term);
        if (magnitude == 0.0) return;
        if (magnitude > previous) return;
        visit(k, term);
        if (magnitude < 1e-17) return;
        previous = magnitude;
    }
}

double j_series_log_space(double n, double x, int max_terms) {
    // term_0 = (x/2)^n / Gamma(n+1)
    const double half = 0.5 * x;
    double term = std::exp(n * std::log(half) - log_gamma_real(n + 1.0));
    double sum = term;
    const double q = half * half;
    for (int k = 1; k < max_terms; ++k) {
        term *= -q / (k * (n + k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k * (n + k) > q) break;
    }
    return sum;
}

double j_upward(double n, double x) {
    const double whole = std::floor(n);
    const double nu = n - whole;
    double previous = bessel_j_asymptotic(BesselOrder(nu), x);
    if (whole == 0.0) return previous;
    double current = bessel_j_asymptotic(BesselOrder(nu + 1.0), x);
    for (double mu = nu + 1.0; mu < n - 0.5; mu += 1.0) {
        const double next = (2.0 * mu / x) * current - previous;
        previous = current;
        current = next;
    }
    return current;
}

// e^{-|Re z|} sinh z and e^{-|Re z|} cosh z without overflow.
Complex sinh_scaled(Complex z) {
    const double shift = std::abs(z.real());
    return 0.5 * (std::exp(z - shift) - std::exp(-z - shift));
}
Complex cosh_scaled(Complex z) {
    const double shift = std::abs(z.real());
    return 0.5 * (std::exp(z - shift) + std::exp(-z - shift));
}

Complex i_half_scaled(Complex z) { return std::sqrt(2.0 / pi) / std::sqrt(z) * sinh_scaled(z); }
Complex i_three_halves_scaled(Complex z) {
    return std::sqrt(2.0 / pi) / std::sqrt(z) * (cosh_scaled(z) - sinh_scaled(z) / z);
}

Complex i_series_scaled(double n, Complex z, int max_terms) {
    const double shift = std::abs(z.real());
    const Complex half = 0.5 * z;
    Complex term = std::exp(n * std::log(half) - log_gamma_real(n + 1.0) - shift);
    Complex sum = term;
    const Complex q = half * half;
    for (int k = 1; k < max_terms; ++k) {
        term *= q / (k * (n + k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k * (n + k) > std::abs(q)) break;
    }
    return sum;
}

Complex i_asymptotic_scaled(double nu, Complex z) {
    // Dominant e^z series carries (-1)^k; the recessive e^{-z} series does not.
    Complex dominant = 0.0;
    Complex recessive = 0.0;
    asymptotic_terms(nu, z, [&](int k, Complex term) {
        dominant += (k % 2 == 0) ? term : -term;
        recessive += term;
    });
    const double shift = std::abs(z.real());
    const Complex root = std::sqrt(2.0 * pi * z);
    // Upper sign valid for -pi/2 < ph z < 3pi/2, lower for -3pi/2 < ph z < pi/2.
    const double sign = z.imag() >= 0.0 ? 1.0 : -1.0;
    const Complex connection = Complex(0.0, sign) * std::exp(Complex(0.0, sign * nu * pi));
    return (std::exp(z - shift) * dominant + connection * std::exp(-z - shift) * recessive) / root;
}

}  // namespace

double log_gamma_real(double a) {
    if (!(a > 0.0)) throw DomainError("log_gamma_real requires a > 0, got " + std::to_string(a));
    if (a < 0.5) return log_gamma_real(a + 1.0) - std::log(a);
    const double x = a - 1.0;
    const double t = x + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * pi) + (x + 0.5) * std::log(t) - t + std::log(lanczos_sum(x));
}

double gamma_real(double a) {
    if (!(a > 0.0)) throw DomainError("gamma_real requires a > 0, got " + std::to_string(a));
    if (a < 0.5) return gamma_real(a + 1.0) / a;
    if (a == std::floor(a) && a <= 21.0) {
        double factorial = 1.0;
        for (int k = 2; k < static_cast<int>(a); ++k) factorial *= k;
        return factorial;
    }
    const double x = a - 1.0;
    const double t = x + kLanczosG + 0.5;
    // Split the power so that t^(x+0.5) does not overflow before e^{-t} is applied.
    const double root = std::pow(t, 0.5 * (x + 0.5));
    return std::sqrt(2.0 * pi) * root * (root * std::exp(-t)) * lanczos_sum(x);
}

namespace half_order {

double j_half(double x) {
    if (x == 0.0) return 0.0;
    return std::sqrt(2.0 / (pi * x)) * std::sin(x);
}

double j_three_halves(double x) {
    if (x == 0.0) return 0.0;
    return std::sqrt(2.0 / (pi * x)) * (std::sin(x) / x - std::cos(x));
}

Complex i_half(Complex z) { return std::sqrt(2.0 / pi) / std::sqrt(z) * std::sinh(z); }

Complex i_three_halves(Complex z) {
    return std::sqrt(2.0 / pi) / std::sqrt(z) * (std::cosh(z) - std::sinh(z) / z);
}

}  // namespace half_order

double bessel_j_series(BesselOrder order, double x, int terms) {
    if (x < 0.0) throw DomainError("bessel_j requires x >= 0");
    const double n = order.value();
    if (x == 0.0) return n == 0.0 ? 1.0 : 0.0;
    return j_series_log_space(n, x, terms);
}

double bessel_j_asymptotic(BesselOrder order, double x) {
    if (!(x > 0.0)) throw DomainError("asymptotic Bessel expansion requires x > 0");
    const double nu = order.value();
    double p = 0.0;
    double q = 0.0;
    asymptotic_terms(nu, x, [&](int k, double term) {
        // P collects even k with sign (-1)^{k/2}; Q odd k with sign (-1)^{(k-1)/2}.
        const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
        if (k % 2 == 0) {
            p += signed_term;
        } else {
            q += signed_term;
        }
    });
    // chi = x - phi, expanded so the large argument is reduced only once.
    const double phi = (0.5 * nu + 0.25) * pi;
    const double sx = std::sin(x);
    const double cx = std::cos(x);
    const double cos_chi = cx * std::cos(phi) + sx * std::sin(phi);
    const double sin_chi = sx * std::cos(phi) - cx * std::sin(phi);
    return std::sqrt(2.0 / (pi * x)) * (p * cos_chi - q * sin_chi);
}

double bessel_j(BesselOrder order, double x) {
    if (!(x >= 0.0)) throw DomainError("bessel_j requires x >= 0, got " + std::to_string(x));
    const double n = order.value();
    if (order.is_half()) return half_order::j_half(x);
    if (order.is_three_halves() && x >= 0.5) return half_order::j_three_halves(x);
    if (x < kBesselCrossover) return bessel_j_series(order, x);
    if (n <= kAsymptoticMaxOrder) return bessel_j_asymptotic(order, x);
    if (n < x) return j_upward(n, x);
    return j_series_log_space(n, x, 2000);
}

Complex bessel_i_scaled(BesselOrder order, Complex z) {
    const double n = order.value();
    if (z == Complex(0.0)) return n == 0.0 ? Complex(1.0) : Complex(0.0);
    if (z.real() == 0.0) {
        // I_n(+-iy) = e^{+-i n pi/2} J_n(y), y > 0.
        const double y = std::abs(z.imag());
        const double sign = z.imag() > 0.0 ? 1.0 : -1.0;
        return std::exp(Complex(0.0, sign * n * pi / 2.0)) * bessel_j(order, y);
    }
    if (order.is_half()) return i_half_scaled(z);
    if (order.is_three_halves() && std::abs(z) >= 0.5) return i_three_halves_scaled(z);
    if (std::abs(z) < kBesselCrossover) return i_series_scaled(n, z, kSeriesTerms);
    if (n <= kAsymptoticMaxOrder) return i_asymptotic_scaled(n, z);
    return i_series_scaled(n, z, 4000);
}

Complex bessel_i(BesselOrder order, Complex z) {
    const Complex scaled = bessel_i_scaled(order, z);
    const double shift = std::abs(z.real());
    if (shift == 0.0) return scaled;
    const Complex value = scaled * std::exp(shift);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw std::overflow_error("bessel_i overflows; use bessel_i_scaled");
    }
    return value;
}

}  // namespace numerics
}  // namespace lieprop
