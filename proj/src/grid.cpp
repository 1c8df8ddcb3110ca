#include "lieprop/grid.hpp"

#include "lieprop/errors.hpp"

#include <algorithm>
#include <cmath>

namespace lieprop {

void GridSpec::validate() const {
    if (!(x_max > x_min)) throw DomainError("GridSpec: x_max must exceed x_min");
    if (points < 16) throw DomainError("GridSpec: at least 16 points are required");
    if (!(dt > 0.0)) throw DomainError("GridSpec: dt must be > 0");
}

GridWavefunction::GridWavefunction(const GridSpec& spec) : samples(spec.size(), Complex(0.0)), grid(spec) {
    spec.validate();
}

GridWavefunction::GridWavefunction(std::vector<Complex> values, const GridSpec& spec)
    : samples(std::move(values)), grid(spec) {
    spec.validate();
    if (static_cast<int>(samples.size()) != spec.size()) {
        throw DomainError("GridWavefunction: sample count does not match grid");
    }
    for (const Complex& v : samples) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("GridWavefunction: non-finite sample");
    }
}

namespace {

double trapezoid_norm_sq(const std::vector<Complex>& v, double dx) {
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
        sum += w * std::norm(v[i]);
    }
    return sum * dx;
}

}  // namespace

double GridWavefunction::norm() const { return std::sqrt(trapezoid_norm_sq(samples, grid.dx())); }

double GridWavefunction::peak() const {
    double p = 0.0;
    for (const Complex& v : samples) p = std::max(p, std::abs(v));
    return p;
}

double l2_distance(const GridWavefunction& a, const GridWavefunction& b) {
    if (a.samples.size() != b.samples.size()) throw DomainError("l2_distance: grids differ");
    std::vector<Complex> diff(a.samples.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a.samples[i] - b.samples[i];
    return std::sqrt(trapezoid_norm_sq(diff, a.grid.dx()));
}

}  // namespace lieprop
