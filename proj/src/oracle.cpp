#include "lieprop/oracle.hpp"

#include "lieprop/errors.hpp"
#include "lieprop/sl2rep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lieprop::oracle {
namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// sqrt(k x) J_n(k x)
double radial_wave(BesselOrder order, double k, double x) {
    const double kx = k * x;
    return std::sqrt(kx) * numerics::bessel_j(order, kx);
}

}  // namespace

void size_hankel_quadrature(numerics::QuadratureSpec& spec, const kernels::KernelPoint& pt, const PhysParams& params) {
    if (pt.t == 0.0) throw DomainError("size_hankel_quadrature: t = 0");
    const double m = params.mass();
    const double h = params.hbar();
    const double t = std::abs(pt.t);
    const std::vector<double> schedule = spec.schedule();
    double eps_min = *std::min_element(schedule.begin(), schedule.end());
    // An undamped integrand has no natural cutoff; size it as if eps were 1e-3.
    if (eps_min <= 0.0) eps_min = 1e-3;
    spec.rule = numerics::QuadratureRule::GaussLegendrePanel;
    spec.k_max = std::sqrt(80.0 * m / (h * t * eps_min));
    const double phase = h * spec.k_max * spec.k_max * t / (2.0 * m) + spec.k_max * (pt.x1 + pt.x2);
    spec.panel_count = static_cast<int>(std::ceil(phase / (2.0 * pi))) + 16;
}

numerics::QuadratureSpec hankel_quadrature_spec(const kernels::KernelPoint& pt, const PhysParams& params,
                                                double epsilon, int levels) {
    if (pt.t == 0.0) throw DomainError("hankel_quadrature_spec: t = 0");
    // Dimensionless phase scale of the kernel; the eps-extrapolation error
    // grows like (scale * eps)^levels.
    const double scale = 1.0 + params.mass() * (pt.x1 * pt.x1 + pt.x2 * pt.x2) / (2.0 * params.hbar() * std::abs(pt.t));
    numerics::QuadratureSpec spec;
    spec.extrapolation_levels = levels;
    spec.epsilon = std::min(epsilon, 0.01 / scale);
    size_hankel_quadrature(spec, pt, params);
    return spec;
}

HankelResult hankel_kernel_oracle(const kernels::KernelPoint& pt, BesselOrder order, const PhysParams& params,
                                  const numerics::QuadratureSpec& spec, double tolerance) {
    if (!(pt.x1 > 0.0 && pt.x2 > 0.0)) throw DomainError("hankel_kernel_oracle: x1, x2 must be > 0");
    if (pt.t == 0.0) throw DomainError("hankel_kernel_oracle: t = 0");
    const double m = params.mass();
    const double h = params.hbar();
    const double t = pt.t;
    numerics::OscillatoryIntegrand integrand;
    integrand.amplitude = [&](double k) {
        return Complex(radial_wave(order, k, pt.x1) * radial_wave(order, k, pt.x2));
    };
    integrand.regulator = [&](double k, double eps) {
        const Complex damped_t(t, -std::abs(t) * eps);
        return std::exp(-kI * h * k * k * damped_t / (2.0 * m));
    };
    const numerics::QuadratureResult r = numerics::integrate_oscillatory(integrand, spec, tolerance);
    return {r.value, r.error_estimate};
}

HankelResult hankel_sho_oracle(const kernels::KernelPoint& pt, const PhysParams& params,
                               const numerics::QuadratureSpec& spec, double tolerance) {
    const double w = params.omega();
    if (w > 0.0 && std::abs(std::sin(w * pt.t)) <= kernels::kCausticTolerance) {
        throw CausticSingularity("hankel_sho_oracle: caustic at t = " + std::to_string(pt.t),
                                 kernels::nearest_caustic(pt.t, w));
    }
    const sl2::FactorCoeffs main = sl2::factor_coeffs(sl2::IdentityId::Main, pt.t, params);
    const double tau = kernels::effective_time(pt.t, w);
    const HankelResult inner = hankel_kernel_oracle({pt.x1, pt.x2, tau}, params.order(), params, spec, tolerance);
    const Complex phases = std::exp(-kI * main.alpha * (pt.x1 * pt.x1 + pt.x2 * pt.x2));
    return {phases * inner.value, inner.error_estimate};
}

HankelResult refined_hankel_oracle(const kernels::KernelPoint& pt, const PhysParams& params, double relative_estimate,
                                   int max_levels) {
    const bool oscillator = params.omega() > 0.0;
    const kernels::KernelPoint spectral_pt{pt.x1, pt.x2, kernels::effective_time(pt.t, params.omega())};
    HankelResult r;
    for (int levels = 3;; ++levels) {
        const numerics::QuadratureSpec spec = hankel_quadrature_spec(spectral_pt, params, 1e-2, levels);
        r = oscillator ? hankel_sho_oracle(pt, params, spec) : hankel_kernel_oracle(pt, params.order(), params, spec);
        if (r.error_estimate <= relative_estimate * std::abs(r.value) || levels >= max_levels) return r;
    }
}

Complex orthogonality_check(double k1, double k2, BesselOrder order, double x_max) {
    if (!(k1 > 0.0 && k2 > 0.0)) throw DomainError("orthogonality_check: k1, k2 must be > 0");
    if (!(x_max > 0.0)) throw DomainError("orthogonality_check: x_max must be > 0");
    const int panels = static_cast<int>(std::ceil((k1 + k2) * x_max / (2.0 * pi))) + 8;
    return numerics::integrate_panels(
        [&](double x) { return Complex(radial_wave(order, k1, x) * radial_wave(order, k2, x)); }, 0.0, x_max,
        panels);
}

double smeared_completeness(double k, double sigma, BesselOrder order, double x_max) {
    if (!(k > 0.0 && sigma > 0.0 && x_max > 0.0)) throw DomainError("smeared_completeness: arguments must be > 0");
    const double k_lo = std::max(0.0, k - 8.0 * sigma);
    const double k_hi = k + 8.0 * sigma;

    const numerics::GaussRule rule = numerics::gauss_legendre(20);
    auto panel_nodes = [&](double a, double b, int panels) {
        std::vector<std::pair<double, double>> out;
        const double width = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = a + (p + 0.5) * width;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                out.emplace_back(mid + 0.5 * width * rule.nodes[i], 0.5 * width * rule.weights[i]);
            }
        }
        return out;
    };
    const auto k_nodes = panel_nodes(k_lo, k_hi, static_cast<int>(std::ceil((k_hi - k_lo) * x_max / (2.0 * pi))) + 4);
    const auto x_nodes = panel_nodes(0.0, x_max, static_cast<int>(std::ceil((k + k_hi) * x_max / (2.0 * pi))) + 8);

    double total = 0.0;
    for (const auto& [x, wx] : x_nodes) {
        double smeared = 0.0;
        for (const auto& [q, wq] : k_nodes) {
            const double g = std::exp(-0.5 * (q - k) * (q - k) / (sigma * sigma));
            smeared += wq * g * radial_wave(order, q, x);
        }
        total += wx * radial_wave(order, k, x) * smeared;
    }
    return total;
}

double eigenfunction_residual(double k, BesselOrder order, const PhysParams& params, const GridSpec& grid,
                              double min_x) {
    if (!(k > 0.0)) throw DomainError("eigenfunction_residual: k must be > 0");
    grid.validate();
    if (!grid.half_line()) throw DomainError("eigenfunction_residual: grid must start at the origin");
    const double dx = grid.dx();
    const double kinetic = params.hbar() * params.hbar() / (2.0 * params.mass());
    const double n = order.value();
    const double energy = kinetic * k * k;

    std::vector<double> u(grid.size());
    for (int i = 0; i < grid.size(); ++i) u[i] = radial_wave(order, k, grid.node(i));

    double worst = 0.0;
    double scale = 0.0;
    for (int i = 1; i < grid.points; ++i) {
        const double x = grid.node(i);
        scale = std::max(scale, std::abs(energy * u[i]));
        if (x < min_x) continue;
        const double second = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
        const double h_u = kinetic * (-second + (n * n - 0.25) / (x * x) * u[i]);
        worst = std::max(worst, std::abs(h_u - energy * u[i]));
    }
    return worst / scale;
}

bool boundary_contaminated(const GridWavefunction& psi) {
    const double peak = psi.peak();
    if (peak == 0.0) return false;
    const int n = psi.grid.size();
    const int band = std::max(1, static_cast<int>(std::ceil(kBoundaryBand * psi.grid.points)));
    double edge = 0.0;
    for (int i = n - band; i < n; ++i) edge = std::max(edge, std::abs(psi.samples[i]));
    if (!psi.grid.half_line()) {
        for (int i = 0; i < band; ++i) edge = std::max(edge, std::abs(psi.samples[i]));
    }
    return edge > kBoundaryThreshold * peak;
}

GridEvolution grid_evolve(const GridWavefunction& psi0, double t_final, const PhysParams& params) {
    const GridSpec& grid = psi0.grid;
    grid.validate();
    if (grid.x_min < 0.0 && !params.order().is_half()) {
        throw DomainError("grid_evolve: full-line grids require lambda = 0");
    }
    if (grid.x_min > 0.0) throw DomainError("grid_evolve: grid must start at or below the origin");
    if (grid.half_line() && params.n() < 0.5) {
        throw DomainError("grid_evolve: a Dirichlet wall at x = 0 is only valid for n >= 1/2");
    }

    GridEvolution out;
    out.psi = psi0;
    out.psi.samples.front() = 0.0;
    out.psi.samples.back() = 0.0;
    out.boundary_contaminated = boundary_contaminated(out.psi);
    if (t_final == 0.0) return out;

    const double h = params.hbar();
    const double m = params.mass();
    const double w = params.omega();
    const double dx = grid.dx();
    out.steps = std::max(1, static_cast<int>(std::ceil(std::abs(t_final) / grid.dt - 1e-9)));
    const double dt = t_final / out.steps;

    // Interior unknowns 1..N-1 with H tridiagonal: off = -hbar^2 / (2 m dx^2).
    const int n_int = grid.points - 1;
    const double off = -h * h / (2.0 * m * dx * dx);
    const double coupling = grid.half_line() ? h * h * (params.n() * params.n() - 0.25) / (2.0 * m) : 0.0;
    std::vector<double> diag(n_int);
    for (int j = 0; j < n_int; ++j) {
        const double x = grid.node(j + 1);
        diag[j] = -2.0 * off + 0.5 * m * w * w * x * x + (coupling != 0.0 ? coupling / (x * x) : 0.0);
    }

    // (1 + i dt H / 2hbar) psi' = (1 - i dt H / 2hbar) psi, factored once (Thomas).
    const Complex a = kI * dt / (2.0 * h);
    const Complex lower = a * off;
    std::vector<Complex> c_prime(n_int);
    std::vector<Complex> inv_denom(n_int);
    {
        Complex prev_c = 0.0;
        for (int j = 0; j < n_int; ++j) {
            const Complex denom = 1.0 + a * diag[j] - lower * prev_c;
            inv_denom[j] = 1.0 / denom;
            c_prime[j] = lower * inv_denom[j];
            prev_c = c_prime[j];
        }
    }

    std::vector<Complex>& psi = out.psi.samples;
    std::vector<Complex> rhs(n_int);
    double previous_norm = out.psi.norm();
    const double reference = previous_norm > 0.0 ? previous_norm : 1.0;
    for (int step = 0; step < out.steps; ++step) {
        for (int j = 0; j < n_int; ++j) {
            const int i = j + 1;
            rhs[j] = (1.0 - a * diag[j]) * psi[i] - a * off * (psi[i - 1] + psi[i + 1]);
        }
        // forward sweep
        Complex prev = 0.0;
        for (int j = 0; j < n_int; ++j) {
            rhs[j] = (rhs[j] - lower * prev) * inv_denom[j];
            prev = rhs[j];
        }
        // back substitution
        for (int j = n_int - 2; j >= 0; --j) rhs[j] -= c_prime[j] * rhs[j + 1];
        for (int j = 0; j < n_int; ++j) psi[j + 1] = rhs[j];

        const double current = out.psi.norm();
        out.max_step_norm_drift = std::max(out.max_step_norm_drift, std::abs(current - previous_norm) / reference);
        previous_norm = current;
        if (!out.boundary_contaminated && step % 64 == 0) out.boundary_contaminated = boundary_contaminated(out.psi);
    }
    out.boundary_contaminated = out.boundary_contaminated || boundary_contaminated(out.psi);
    return out;
}

}  // namespace lieprop::oracle
