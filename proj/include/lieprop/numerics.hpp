#pragma once

// Special functions and quadrature shared by the propagator, oracle and
// evolution code. Everything here is a pure function of its arguments.

#include <complex>
#include <limits>
#include <functional>
#include <span>
#include <vector>

namespace lieprop {

using Complex = std::complex<double>;

/// Real Bessel order n >= 0. The coupling of the inverse-square potential
/// is lambda = hbar^2 (n^2 - 1/4), so n >= 0 is the same as lambda >= -hbar^2/4.
class BesselOrder {
public:
    explicit BesselOrder(double n);
    double value() const noexcept { return n_; }

    bool is_half() const noexcept { return n_ == 0.5; }
    bool is_three_halves() const noexcept { return n_ == 1.5; }

    friend bool operator==(BesselOrder, BesselOrder) = default;

private:
    double n_;
};

namespace numerics {

/// |x| at which bessel_j switches from the ascending series to the
/// Hankel asymptotic expansion.
inline constexpr double kBesselCrossover = 12.0;
/// Number of ascending-series terms used below the crossover.
inline constexpr int kSeriesTerms = 30;
/// Orders above this use upward recurrence from the fractional part when
/// x >= kBesselCrossover, since the asymptotic series loses accuracy there.
inline constexpr double kAsymptoticMaxOrder = 3.0;

double gamma_real(double a);
double log_gamma_real(double a);

/// J_n(x) for x >= 0. Throws DomainError for x < 0.
double bessel_j(BesselOrder order, double x);

/// The two branches of bessel_j, exposed so that their agreement at the
/// crossover can be checked directly.
double bessel_j_series(BesselOrder order, double x, int terms = kSeriesTerms);
double bessel_j_asymptotic(BesselOrder order, double x);

/// I_n(z), principal branch (cut along the negative real axis).
/// Throws std::overflow_error when the result is not representable.
Complex bessel_i(BesselOrder order, Complex z);

/// e^{-|Re z|} I_n(z). Finite for every finite z.
Complex bessel_i_scaled(BesselOrder order, Complex z);

/// Closed forms for the half-integer orders. These back the fast paths and
/// serve as independent test oracles.
namespace half_order {
double j_half(double x);
double j_three_halves(double x);
Complex i_half(Complex z);
Complex i_three_halves(Complex z);
}  // namespace half_order

// ---------------------------------------------------------------------------
// Quadrature

enum class QuadratureRule { GaussLegendrePanel, Trapezoid };

struct QuadratureSpec {
    QuadratureRule rule = QuadratureRule::GaussLegendrePanel;
    int panel_count = 256;
    double k_max = 50.0;
    /// Largest regularization strength; the schedule halves it
    /// (extrapolation_levels - 1) times. Zero disables regularization.
    double epsilon = 1e-2;
    int extrapolation_levels = 3;
    /// Explicit schedule; overrides epsilon/extrapolation_levels when non-empty.
    std::vector<double> epsilon_schedule;

    void validate() const;
    std::vector<double> schedule() const;
};

struct QuadratureResult {
    Complex value;
    double error_estimate = 0.0;
};

/// Integrand amplitude(k) * regulator(k, eps) on (0, k_max]. An empty
/// regulator means the integrand is used as is (no eps dependence).
struct OscillatoryIntegrand {
    std::function<Complex(double)> amplitude;
    std::function<Complex(double, double)> regulator;
};

/// Regularized integral over (0, k_max], extrapolated polynomially to eps -> 0.
/// The error estimate combines the extrapolation spread, the discretization
/// difference between two rule orders and a truncation bound at k_max.
/// Throws NonConvergence when the estimate exceeds `tolerance`.
QuadratureResult integrate_oscillatory(const OscillatoryIntegrand& f, const QuadratureSpec& spec,
                                       double tolerance = std::numeric_limits<double>::infinity());

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

GaussRule gauss_legendre(int points);

/// Composite Gauss-Legendre over [a, b] with equal panels.
Complex integrate_panels(const std::function<Complex(double)>& f, double a, double b, int panels,
                         int order = 20);

/// Polynomial extrapolation of samples (x_i, y_i) to x = 0 (Neville).
Complex extrapolate_to_zero(std::span<const double> x, std::span<const Complex> y);

}  // namespace numerics
}  // namespace lieprop
