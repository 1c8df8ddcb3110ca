#pragma once

#include "lieprop/numerics.hpp"

namespace lieprop {

/// Physical constants and the inverse-square coupling. The coupling is
/// stored as the Bessel order n; lambda = hbar^2 (n^2 - 1/4) is derived at
/// construction and never set on its own.
class PhysParams {
public:
    PhysParams() : PhysParams(1.0, 1.0, 1.0, 0.5) {}
    PhysParams(double hbar, double mass, double omega, double order_n);

    /// Build from the coupling lambda >= -hbar^2/4.
    static PhysParams from_lambda(double hbar, double mass, double omega, double lambda);

    double hbar() const noexcept { return hbar_; }
    double mass() const noexcept { return mass_; }
    double omega() const noexcept { return omega_; }
    BesselOrder order() const noexcept { return order_; }
    double n() const noexcept { return order_.value(); }
    double lambda() const noexcept { return lambda_; }

    PhysParams with_omega(double omega) const { return {hbar_, mass_, omega, order_.value()}; }
    PhysParams with_order(double n) const { return {hbar_, mass_, omega_, n}; }

private:
    double hbar_;
    double mass_;
    double omega_;
    BesselOrder order_;
    double lambda_;
};

}  // namespace lieprop
