#include "lieprop/errors.hpp"
#include "lieprop/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lieprop::numerics {

void QuadratureSpec::validate() const {
    if (!(k_max > 0.0)) throw DomainError("QuadratureSpec: k_max must be > 0");
    if (panel_count < 1) throw DomainError("QuadratureSpec: panel_count must be >= 1");
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw DomainError("QuadratureSpec: epsilon must lie in [0, 1)");
    if (extrapolation_levels < 1) throw DomainError("QuadratureSpec: extrapolation_levels must be >= 1");
    for (double e : epsilon_schedule) {
        if (!(e >= 0.0 && e < 1.0)) throw DomainError("QuadratureSpec: schedule entries must lie in [0, 1)");
    }
}

std::vector<double> QuadratureSpec::schedule() const {
    if (!epsilon_schedule.empty()) return epsilon_schedule;
    if (epsilon == 0.0) return {0.0};
    std::vector<double> out;
    double e = epsilon;
    for (int i = 0; i < extrapolation_levels; ++i, e *= 0.5) out.push_back(e);
    return out;
}

GaussRule gauss_legendre(int points) {
    if (points < 1) throw DomainError("gauss_legendre requires at least one point");
    GaussRule rule;
    rule.nodes.resize(points);
    rule.weights.resize(points);
    const int half = (points + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
        double derivative = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= points; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            derivative = points * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / derivative;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        rule.nodes[i] = -x;
        rule.nodes[points - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[points - 1 - i] = w;
    }
    return rule;
}

Complex integrate_panels(const std::function<Complex(double)>& f, double a, double b, int panels, int order) {
    if (panels < 1) throw DomainError("integrate_panels requires panels >= 1");
    const GaussRule rule = gauss_legendre(order);
    const double width = (b - a) / panels;
    Complex total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        Complex panel = 0.0;
        for (int i = 0; i < order; ++i) panel += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
        total += 0.5 * width * panel;
    }
    return total;
}

Complex extrapolate_to_zero(std::span<const double> x, std::span<const Complex> y) {
    if (x.size() != y.size() || x.empty()) throw DomainError("extrapolate_to_zero: mismatched samples");
    std::vector<Complex> table(y.begin(), y.end());
    const std::size_t n = x.size();
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = 0; i + level < n; ++i) {
            const double xi = x[i];
            const double xj = x[i + level];
            table[i] = (xj * table[i] - xi * table[i + 1]) / (xj - xi);
        }
    }
    return table[0];
}

namespace {

struct Node {
    double k;
    double weight;      // primary rule
    double weight_low;  // lower-order companion rule, zero if not a member
};

// Primary and companion node sets. For Gauss-Legendre panels the companion
// is a 12-point rule on the same panels; for the trapezoid rule it is the
// same rule with every other node.
std::vector<Node> build_nodes(const QuadratureSpec& spec) {
    std::vector<Node> nodes;
    if (spec.rule == QuadratureRule::Trapezoid) {
        const int count = spec.panel_count % 2 == 0 ? spec.panel_count : spec.panel_count + 1;
        const double h = spec.k_max / count;
        for (int j = 1; j <= count; ++j) {
            const double w = (j == count) ? 0.5 * h : h;
            const double w_low = (j % 2 == 0) ? ((j == count) ? h : 2.0 * h) : 0.0;
            nodes.push_back({j * h, w, w_low});
        }
        return nodes;
    }
    const GaussRule high = gauss_legendre(20);
    const GaussRule low = gauss_legendre(12);
    const double width = spec.k_max / spec.panel_count;
    for (int p = 0; p < spec.panel_count; ++p) {
        const double mid = (p + 0.5) * width;
        for (std::size_t i = 0; i < high.nodes.size(); ++i) {
            nodes.push_back({mid + 0.5 * width * high.nodes[i], 0.5 * width * high.weights[i], 0.0});
        }
        for (std::size_t i = 0; i < low.nodes.size(); ++i) {
            nodes.push_back({mid + 0.5 * width * low.nodes[i], 0.0, 0.5 * width * low.weights[i]});
        }
    }
    return nodes;
}

}  // namespace

QuadratureResult integrate_oscillatory(const OscillatoryIntegrand& f, const QuadratureSpec& spec, double tolerance) {
    spec.validate();
    if (!f.amplitude) throw DomainError("integrate_oscillatory: empty integrand");
    const std::vector<double> eps = f.regulator ? spec.schedule() : std::vector<double>{0.0};
    const std::vector<Node> nodes = build_nodes(spec);

    std::vector<Complex> high(eps.size(), 0.0);
    std::vector<Complex> low(eps.size(), 0.0);
    for (const Node& node : nodes) {
        const Complex a = f.amplitude(node.k);
        for (std::size_t l = 0; l < eps.size(); ++l) {
            const Complex value = f.regulator ? a * f.regulator(node.k, eps[l]) : a;
            high[l] += node.weight * value;
            low[l] += node.weight_low * value;
        }
    }

    double discretization = 0.0;
    double truncation = 0.0;
    const Complex edge = f.amplitude(spec.k_max);
    for (std::size_t l = 0; l < eps.size(); ++l) {
        discretization = std::max(discretization, std::abs(high[l] - low[l]));
        const Complex at_edge = f.regulator ? edge * f.regulator(spec.k_max, eps[l]) : edge;
        truncation = std::max(truncation, std::abs(at_edge) * spec.k_max);
    }

    QuadratureResult result;
    double extrapolation = 0.0;
    if (eps.size() == 1) {
        result.value = high[0];
    } else {
        result.value = extrapolate_to_zero(eps, high);
        // Spread against the extrapolant that drops the coarsest level.
        const Complex reduced = extrapolate_to_zero(std::span(eps).subspan(1), std::span<const Complex>(high).subspan(1));
        extrapolation = std::abs(result.value - reduced);
    }
    result.error_estimate = extrapolation + discretization + truncation;
    if (!(result.error_estimate <= tolerance)) {
        throw NonConvergence("oscillatory quadrature error estimate " + std::to_string(result.error_estimate) +
                                 " exceeds tolerance " + std::to_string(tolerance),
                             result.error_estimate);
    }
    return result;
}

}  // namespace lieprop::numerics
