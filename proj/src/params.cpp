#include "lieprop/params.hpp"

#include "lieprop/errors.hpp"

#include <cmath>

namespace lieprop {

PhysParams::PhysParams(double hbar, double mass, double omega, double order_n)
    : hbar_(hbar), mass_(mass), omega_(omega), order_(order_n), lambda_(hbar * hbar * (order_n * order_n - 0.25)) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("hbar must be finite and > 0");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mass must be finite and > 0");
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw DomainError("omega must be finite and >= 0");
}

PhysParams PhysParams::from_lambda(double hbar, double mass, double omega, double lambda) {
    if (!(hbar > 0.0)) throw DomainError("hbar must be > 0");
    const double shifted = lambda / (hbar * hbar) + 0.25;
    if (!(shifted >= 0.0)) throw DomainError("lambda must be >= -hbar^2/4 (attractive regime unsupported)");
    return {hbar, mass, omega, std::sqrt(shifted)};
}

}  // namespace lieprop
