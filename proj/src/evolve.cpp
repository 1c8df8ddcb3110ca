#include "lieprop/evolve.hpp"

#include "lieprop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lieprop::evolve {
namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
using kernels::KernelKind;

double normalization(double width) { return std::pow(pi * width * width, -0.25); }

bool has_oscillator(KernelKind kind) { return kind == KernelKind::Sho || kind == KernelKind::RadialSho; }

double kernel_time_scale(double t, KernelKind kind, const PhysParams& params) {
    return std::abs(kernels::effective_time(t, has_oscillator(kind) ? params.omega() : 0.0));
}

// Cubic Lagrange interpolation through samples first..first+3 at position u.
Complex cubic(const std::vector<Complex>& v, const GridSpec& grid, int first, double u) {
    const double dx = grid.dx();
    const double s = (u - grid.node(first)) / dx;  // in [0, 3]
    const double l0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    const double l1 = s * (s - 2.0) * (s - 3.0) / 2.0;
    const double l2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
    const double l3 = s * (s - 1.0) * (s - 2.0) / 6.0;
    return l0 * v[first] + l1 * v[first + 1] + l2 * v[first + 2] + l3 * v[first + 3];
}

}  // namespace

Complex TestFunction::operator()(double x, const PhysParams& params) const {
    if (amplitude == 0.0) return 0.0;
    const double d = x - center;
    return amplitude * normalization(width) *
           std::exp(Complex(-d * d / (2.0 * width * width), momentum * x / params.hbar()));
}

void TestFunction::validate() const {
    if (!(width > 0.0) || !std::isfinite(center) || !std::isfinite(momentum)) {
        throw DomainError("TestFunction: width must be > 0 and parameters finite");
    }
}

GridWavefunction sample(const TestFunction& f, const GridSpec& grid, const PhysParams& params) {
    f.validate();
    GridWavefunction psi(grid);
    for (int i = 0; i < grid.size(); ++i) psi.samples[i] = f(grid.node(i), params);
    if (grid.half_line()) psi.samples.front() = 0.0;
    return psi;
}

Complex free_gaussian_evolution(const TestFunction& f, double x, double t, const PhysParams& params) {
    if (f.amplitude == 0.0) return 0.0;
    const double h = params.hbar();
    const double m = params.mass();
    const double w2 = f.width * f.width;
    const double k0 = f.momentum / h;
    const Complex spread = 1.0 + kI * h * t / (m * w2);
    const double drift = x - f.center - f.momentum * t / m;
    const Complex exponent = -drift * drift / (2.0 * w2 * spread) + kI * (k0 * x - h * k0 * k0 * t / (2.0 * m));
    return f.amplitude * normalization(f.width) / std::sqrt(spread) * std::exp(exponent);
}

Complex image_gaussian_evolution(const TestFunction& f, double x, double t, const PhysParams& params) {
    return free_gaussian_evolution(f, x, t, params) - free_gaussian_evolution(f, -x, t, params);
}

Propagation propagate(const GridWavefunction& psi0, double t, KernelKind kind, const PhysParams& params) {
    const GridSpec& grid = psi0.grid;
    grid.validate();
    const bool radial = kernels::is_radial(kind);
    if (radial && grid.x_min < 0.0) throw DomainError("propagate: radial kernels need a grid with x_min >= 0");

    Propagation out;
    out.psi = psi0;
    if (t == 0.0) return out;

    const double dx = grid.dx();
    const double peak = psi0.peak();
    std::vector<int> sources;
    for (int j = 0; j < grid.size(); ++j) {
        if (radial && grid.node(j) <= 0.0) continue;
        if (std::abs(psi0.samples[j]) > 1e-16 * peak) sources.push_back(j);
    }
    // Validates the time (caustics, t = 0) once, with a representative point.
    {
        const double probe = radial ? std::max(grid.node(1), grid.x_min + dx) : grid.node(grid.points / 2);
        (void)kernels::evaluate_kernel(kind, {probe, probe, t}, params);
    }

    for (int i = 0; i < grid.size(); ++i) {
        const double x1 = grid.node(i);
        if (radial && x1 <= 0.0) {
            out.psi.samples[i] = 0.0;
            continue;
        }
        Complex acc = 0.0;
        for (int j : sources) {
            const double weight = (j == 0 || j == grid.points) ? 0.5 * dx : dx;
            acc += weight * kernels::evaluate_kernel(kind, {x1, grid.node(j), t}, params).value * psi0.samples[j];
        }
        out.psi.samples[i] = acc;
    }
    const double n0 = psi0.norm();
    out.norm_drift = n0 > 0.0 ? std::abs(out.psi.norm() - n0) / n0 : 0.0;
    return out;
}

Propagation propagate(const TestFunction& f, const GridSpec& grid, double t, KernelKind kind,
                      const PhysParams& params) {
    return propagate(sample(f, grid, params), t, kind, params);
}

double schrodinger_residual(KernelKind kind, const kernels::KernelPoint& pt, const PhysParams& params, double dx,
                            double dt) {
    if (!(dx > 0.0 && dt > 0.0)) throw DomainError("schrodinger_residual: dx and dt must be > 0");
    const bool radial = kernels::is_radial(kind);
    if (radial && !(pt.x1 - dx > 0.0 && pt.x2 > 0.0)) {
        throw DomainError("schrodinger_residual: stencil crosses x <= 0");
    }
    auto k = [&](double x1, double t) { return kernels::evaluate_kernel(kind, {x1, pt.x2, t}, params).value; };
    const double h = params.hbar();
    const double m = params.mass();
    const double w = has_oscillator(kind) ? params.omega() : 0.0;
    const double coupling = radial ? params.n() * params.n() - 0.25 : 0.0;
    const double x = pt.x1;

    const Complex center = k(x, pt.t);
    const Complex second = (k(x + dx, pt.t) - 2.0 * center + k(x - dx, pt.t)) / (dx * dx);
    const Complex lhs = h * h / (2.0 * m) * (-second + (coupling / (x * x) + m * m * w * w * x * x / (h * h)) * center);
    const Complex rhs = kI * h * (k(x, pt.t + dt) - k(x, pt.t - dt)) / (2.0 * dt);
    return std::abs(lhs - rhs) / std::abs(rhs);
}

Complex smear_kernel(const TestFunction& f, double x1, double t, KernelKind kind, const PhysParams& params) {
    f.validate();
    if (f.amplitude == 0.0) return 0.0;
    const bool radial = kernels::is_radial(kind);
    double lo = f.center - 12.0 * f.width;
    const double hi = f.center + 12.0 * f.width;
    if (radial) lo = std::max(lo, 0.0);
    if (!(hi > lo)) return 0.0;
    const double tau = kernel_time_scale(t, kind, params);
    if (tau == 0.0) throw DomainError("smear_kernel: kernel is singular at this time");
    const double rate = params.mass() * (std::abs(x1) + std::max(std::abs(lo), std::abs(hi))) / (params.hbar() * tau) +
                        std::abs(f.momentum) / params.hbar() + 1.0 / f.width;
    const int panels = static_cast<int>(std::ceil((hi - lo) * rate / (2.0 * pi))) + 16;
    return numerics::integrate_panels(
        [&](double x2) {
            if (radial && x2 <= 0.0) return Complex(0.0);
            return kernels::evaluate_kernel(kind, {x1, x2, t}, params).value * f(x2, params);
        },
        lo, hi, panels);
}

std::vector<double> delta_limit_check(const TestFunction& f, double x1, std::span<const double> t_sequence,
                                      KernelKind kind, const PhysParams& params) {
    std::vector<double> errors;
    double previous = std::numeric_limits<double>::infinity();
    for (double t : t_sequence) {
        if (!(t > 0.0) || !(t < previous)) {
            throw DomainError("delta_limit_check: times must be positive and strictly decreasing");
        }
        previous = t;
        errors.push_back(std::abs(smear_kernel(f, x1, t, kind, params) - f(x1, params)));
    }
    return errors;
}

Dilation dilation_apply(const GridWavefunction& psi, double gamma, const PhysParams& params) {
    const GridSpec& grid = psi.grid;
    grid.validate();
    if (gamma == 0.0) return {psi, 0.0};
    const double h = params.hbar();
    const double scale = std::exp(-2.0 * h * gamma);  // argument rescaling
    const double amp = std::exp(-h * gamma);
    const double dx = grid.dx();
    const double peak = psi.peak();

    // Samples of psi that the rescaled grid never reaches would be lost.
    for (int i = 0; i < grid.size(); ++i) {
        const double u = grid.node(i);
        const bool reached = u <= grid.x_max * scale + 0.5 * dx && u >= grid.x_min * scale - 0.5 * dx;
        if (!reached && std::abs(psi.samples[i]) > 1e-8 * peak) {
            throw DomainError("dilation_apply: rescaled support overflows the grid (gamma = " +
                              std::to_string(gamma) + ")");
        }
    }

    Dilation out;
    out.psi = GridWavefunction(grid);
    double err_sq = 0.0;
    const int last_first = grid.points - 3;
    for (int i = 0; i < grid.size(); ++i) {
        const double u = grid.node(i) * scale;
        if (u < grid.x_min || u > grid.x_max) continue;
        const int j = std::clamp(static_cast<int>(std::floor((u - grid.x_min) / dx)), 0, grid.points);
        const int centered = std::clamp(j - 1, 0, last_first);
        const int shifted = std::clamp(u - grid.node(j) < 0.5 * dx ? j - 2 : j, 0, last_first);
        const Complex value = cubic(psi.samples, grid, centered, u);
        const Complex alternative = cubic(psi.samples, grid, shifted, u);
        out.psi.samples[i] = amp * value;
        const double w = (i == 0 || i == grid.points) ? 0.5 : 1.0;
        err_sq += w * std::norm(amp * (value - alternative)) * dx;
    }
    out.interpolation_error = std::sqrt(err_sq);
    return out;
}

}  // namespace lieprop::evolve
