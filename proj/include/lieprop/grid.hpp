#pragma once

#include "lieprop/numerics.hpp"

#include <vector>

namespace lieprop {

/// Uniform grid x_i = x_min + i dx, i = 0..points, dx = (x_max - x_min) / points.
/// Half-line problems use x_min = 0; node 0 is then the wall.
struct GridSpec {
    double x_max = 20.0;
    int points = 2000;
    double dt = 1e-3;
    double x_min = 0.0;

    double dx() const { return (x_max - x_min) / points; }
    double node(int i) const { return x_min + i * dx(); }
    int size() const { return points + 1; }
    bool half_line() const { return x_min == 0.0; }
    void validate() const;
};

struct GridWavefunction {
    std::vector<Complex> samples;
    GridSpec grid;

    GridWavefunction() = default;
    explicit GridWavefunction(const GridSpec& spec);
    GridWavefunction(std::vector<Complex> values, const GridSpec& spec);

    /// Trapezoid L2 norm.
    double norm() const;
    double peak() const;
};

/// Trapezoid L2 distance between two wavefunctions on the same grid.
double l2_distance(const GridWavefunction& a, const GridWavefunction& b);

}  // namespace lieprop
