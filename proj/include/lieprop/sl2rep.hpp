#pragma once

// Two-dimensional representation of the sl(2,C) algebra spanned by x^2,
// p^2 + lambda/x^2 and xp + px, and numerical verification of the
// disentangling identities for the oscillator evolution operator.

#include "lieprop/numerics.hpp"
#include "lieprop/params.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace lieprop::sl2 {

/// Row-major 2x2 complex matrix [[a, b], [c, d]].
struct Sl2Matrix {
    Complex a{}, b{}, c{}, d{};

    static Sl2Matrix identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Complex trace() const { return a + d; }
    Complex det() const { return a * d - b * c; }
    /// Largest absolute entry.
    double max_abs() const;
    /// Spectral (operator 2-) norm.
    double operator_norm() const;

    friend Sl2Matrix operator+(const Sl2Matrix& l, const Sl2Matrix& r) {
        return {l.a + r.a, l.b + r.b, l.c + r.c, l.d + r.d};
    }
    friend Sl2Matrix operator-(const Sl2Matrix& l, const Sl2Matrix& r) {
        return {l.a - r.a, l.b - r.b, l.c - r.c, l.d - r.d};
    }
    friend Sl2Matrix operator*(const Sl2Matrix& l, const Sl2Matrix& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
    friend Sl2Matrix operator*(Complex s, const Sl2Matrix& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
    friend bool operator==(const Sl2Matrix&, const Sl2Matrix&) = default;
};

Sl2Matrix commutator(const Sl2Matrix& x, const Sl2Matrix& y);

enum class GeneratorId { X2, P2L, D };

enum class IdentityId { Main, A1a, A1b, A2a, A2b, A3a, A3b };

inline constexpr std::array<IdentityId, 7> kAllIdentities = {
    IdentityId::Main, IdentityId::A1a, IdentityId::A1b, IdentityId::A2a,
    IdentityId::A2b,  IdentityId::A3a, IdentityId::A3b};

std::string_view to_string(IdentityId id);
std::optional<IdentityId> parse_identity(std::string_view name);

/// Coefficients of exp(-i alpha x^2), exp(-i beta (p^2 + lambda/x^2)) and
/// exp(-i gamma (xp + px)) in one factorization of the evolution operator.
struct FactorCoeffs {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    IdentityId identity = IdentityId::Main;
};

/// x^2 -> [[0, 2hbar], [0, 0]], p^2 + lambda/x^2 -> [[0, 0], [2hbar, 0]],
/// xp + px -> diag(-2i hbar, 2i hbar). Independent of lambda.
Sl2Matrix generator_matrix(GeneratorId id, const PhysParams& params);

/// Exact exponential of a traceless 2x2 matrix:
/// cosh(s) Id + sinh(s)/s M with s^2 = -det M.
/// Throws DomainError if |trace M| > 1e-14 (scaled by the matrix size).
Sl2Matrix exp_traceless(const Sl2Matrix& m);

/// The representative of exp(-i t H / hbar) with
/// H = (p^2 + lambda/x^2)/2m + m omega^2 x^2 / 2.
Sl2Matrix hamiltonian_exponential(double t, const PhysParams& params);

/// Closed-form coefficients for the requested factorization at time t.
/// MAIN needs tan(omega t / 2) finite; the A-identities need cos(omega t) > 0.
FactorCoeffs factor_coeffs(IdentityId id, double t, const PhysParams& params);

/// True when factor_coeffs(id, t, params) is defined.
bool within_validity_window(IdentityId id, double t, const PhysParams& params);

/// Ordered product of the single-generator exponentials of `coeffs`.
Sl2Matrix factor_product(const FactorCoeffs& coeffs, const PhysParams& params);

/// Max-entry residual between the factor product and the exponential of
/// the full Hamiltonian, after scaling both by the operator norm of the latter.
double identity_residual(IdentityId id, double t, const PhysParams& params);

/// |e^G O e^{-G} - sum_{k<=terms} ad_G^k(O)/k!| (max entry).
double adjoint_series_check(const Sl2Matrix& g, const Sl2Matrix& o, int terms);

}  // namespace lieprop::sl2
