#include "doctest.h"

#include "lieprop/errors.hpp"
#include "lieprop/sl2rep.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace lieprop;
using namespace lieprop::sl2;
using std::numbers::pi;

namespace {

const Complex I(0.0, 1.0);

double max_diff(const Sl2Matrix& x, const Sl2Matrix& y) { return (x - y).max_abs(); }

// Exponential by truncated Taylor series with scaling and squaring; independent of the closed form.
Sl2Matrix exp_taylor(const Sl2Matrix& m) {
    int squarings = 0;
    Sl2Matrix s = m;
    while (s.max_abs() > 0.1) {
        s = Complex(0.5) * s;
        ++squarings;
    }
    Sl2Matrix sum = Sl2Matrix::identity();
    Sl2Matrix term = Sl2Matrix::identity();
    for (int k = 1; k < 30; ++k) {
        term = Complex(1.0 / k) * (term * s);
        sum = sum + term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

}  // namespace

TEST_CASE("generator matrices") {
    const PhysParams p(1.0, 1.0, 1.0, 0.5);
    CHECK(generator_matrix(GeneratorId::X2, p) == Sl2Matrix{0.0, 2.0, 0.0, 0.0});
    CHECK(generator_matrix(GeneratorId::P2L, p) == Sl2Matrix{0.0, 0.0, 2.0, 0.0});
    CHECK(generator_matrix(GeneratorId::D, p) == Sl2Matrix{-2.0 * I, 0.0, 0.0, 2.0 * I});
}

TEST_CASE("commutator table holds for every hbar and does not depend on the order") {
    for (double hbar : {1.0, 0.3, 2.7}) {
        for (double n : {0.0, 0.5, 3.0}) {
            const PhysParams p(hbar, 1.3, 0.7, n);
            const Sl2Matrix x2 = generator_matrix(GeneratorId::X2, p);
            const Sl2Matrix p2 = generator_matrix(GeneratorId::P2L, p);
            const Sl2Matrix d = generator_matrix(GeneratorId::D, p);
            CHECK(max_diff(commutator(x2, p2), 2.0 * I * hbar * d) < 1e-14);
            CHECK(max_diff(commutator(d, x2), -4.0 * I * hbar * x2) < 1e-14);
            CHECK(max_diff(commutator(d, p2), 4.0 * I * hbar * p2) < 1e-14);
        }
    }
}

TEST_CASE("exp_traceless") {
    CHECK(exp_traceless(Sl2Matrix{}) == Sl2Matrix::identity());
    CHECK_THROWS_AS(exp_traceless(Sl2Matrix{1.0, 0.0, 0.0, 0.0}), DomainError);

    const PhysParams p;
    for (double t : {0.2, 1.0, 2.5, -0.7}) {
        const Sl2Matrix h = hamiltonian_exponential(t, p);
        const Sl2Matrix expected{std::cos(t), -I * std::sin(t), -I * std::sin(t), std::cos(t)};
        CHECK(max_diff(h, expected) < 1e-15);
    }
    const Sl2Matrix quarter = hamiltonian_exponential(pi / 2.0, p);
    CHECK(max_diff(quarter, Sl2Matrix{0.0, -I, -I, 0.0}) < 1e-15);

    // Nilpotent input: exp(M) = Id + M exactly.
    const Sl2Matrix nil{0.0, 3.0, 0.0, 0.0};
    CHECK(exp_traceless(nil) == Sl2Matrix{1.0, 3.0, 0.0, 1.0});
}

TEST_CASE("exp_traceless: unit determinant and agreement with a Taylor oracle for random inputs") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const Complex a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
        Sl2Matrix m{a, b, c, -a};
        const double scale = 10.0 * std::abs(u(rng)) / std::max(m.operator_norm(), 1e-12);
        m = Complex(scale) * m;
        const Sl2Matrix e = exp_traceless(m);
        CHECK(std::abs(e.det() - 1.0) < 1e-12 * std::max(1.0, e.max_abs() * e.max_abs()));
        CHECK(max_diff(e, exp_taylor(m)) < 1e-11 * std::max(1.0, e.max_abs()));
    }
    // Tiny s uses the series branch; it must be continuous with the closed form.
    const Sl2Matrix small{Complex(1e-5, 0.0), 2e-5, 3e-5, Complex(-1e-5, 0.0)};
    CHECK(max_diff(exp_traceless(small), exp_taylor(small)) < 1e-16);
}

TEST_CASE("factor_coeffs examples") {
    const PhysParams p;
    const FactorCoeffs main = factor_coeffs(IdentityId::Main, pi / 2.0, p);
    CHECK(main.alpha == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(main.beta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(main.gamma == 0.0);

    for (IdentityId id : kAllIdentities) {
        const FactorCoeffs c = factor_coeffs(id, 0.0, p);
        CHECK(c.alpha == 0.0);
        CHECK(c.beta == 0.0);
        CHECK(c.gamma == 0.0);
        CHECK(c.identity == id);
    }

    const FactorCoeffs a3 = factor_coeffs(IdentityId::A3a, pi / 3.0, p);
    CHECK(a3.gamma == doctest::Approx(std::log(0.5) / 2.0).epsilon(1e-14));
    CHECK(a3.alpha == doctest::Approx(0.5 * std::tan(pi / 3.0)).epsilon(1e-14));
    CHECK(a3.beta == doctest::Approx(std::sin(pi / 3.0) * std::cos(pi / 3.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("factor_coeffs A1a closed forms with non-unit constants") {
    const PhysParams p(0.7, 1.9, 1.3, 2.0);
    const double t = 0.5;
    const double wt = p.omega() * t;
    const FactorCoeffs c = factor_coeffs(IdentityId::A1a, t, p);
    CHECK(std::exp(2.0 * c.gamma * p.hbar()) == doctest::Approx(std::cos(wt)).epsilon(1e-14));
    CHECK(c.alpha == doctest::Approx(p.mass() * p.omega() / (2.0 * p.hbar()) * std::tan(wt)).epsilon(1e-14));
    CHECK(c.beta == doctest::Approx(std::tan(wt) / (2.0 * p.hbar() * p.mass() * p.omega())).epsilon(1e-14));
}

TEST_CASE("validity windows") {
    const PhysParams p;
    CHECK_THROWS_AS(factor_coeffs(IdentityId::Main, pi, p), DomainError);
    CHECK_NOTHROW(factor_coeffs(IdentityId::Main, 0.99 * pi, p));
    for (IdentityId id : kAllIdentities) {
        if (id == IdentityId::Main) continue;
        CHECK(within_validity_window(id, 0.45 * pi, p));
        CHECK_FALSE(within_validity_window(id, 0.6 * pi, p));
        CHECK_FALSE(within_validity_window(id, 0.5 * pi, p));
        CHECK_THROWS_AS(factor_coeffs(id, 0.6 * pi, p), DomainError);
        try {
            factor_coeffs(id, 0.6 * pi, p);
        } catch (const DomainError& e) {
            CHECK(std::string(e.what()).find("cos") != std::string::npos);
        }
    }
}

TEST_CASE("identity residuals") {
    const PhysParams p;
    CHECK(identity_residual(IdentityId::Main, 0.7, p) < 1e-12);
    for (IdentityId id : kAllIdentities) CHECK(identity_residual(id, 0.0, p) == 0.0);

    for (const PhysParams& q : {PhysParams(), PhysParams(0.5, 2.0, 3.0, 1.0), PhysParams(2.0, 0.3, 0.4, 0.0)}) {
        for (IdentityId id : kAllIdentities) {
            for (int i = 0; i < 25; ++i) {
                const double t = (-0.45 + 0.9 * i / 24.0) * pi / q.omega();
                CHECK(identity_residual(id, t, q) < 1e-12);
            }
        }
    }
}

TEST_CASE("identity residuals hold without oscillator term") {
    const PhysParams p(1.0, 1.0, 0.0, 1.5);
    for (IdentityId id : kAllIdentities) {
        for (double t : {-2.0, -0.3, 0.8, 5.0}) CHECK(identity_residual(id, t, p) < 1e-12);
    }
}

TEST_CASE("conjugation pairing of the A1 identities") {
    const PhysParams p(1.0, 1.0, 1.0, 0.5);
    for (double t : {0.1, 0.5, 1.2}) {
        CHECK(std::abs(identity_residual(IdentityId::A1a, t, p) - identity_residual(IdentityId::A1b, t, p)) < 1e-12);
        const FactorCoeffs a = factor_coeffs(IdentityId::A1a, t, p);
        const FactorCoeffs b = factor_coeffs(IdentityId::A1b, -t, p);
        CHECK(b.alpha == doctest::Approx(-a.alpha).epsilon(1e-14));
        CHECK(b.beta == doctest::Approx(-a.beta).epsilon(1e-14));
        CHECK(std::abs(std::abs(b.gamma) - std::abs(a.gamma)) < 1e-14);
    }
}

TEST_CASE("identity residual is bitwise independent of the order") {
    for (IdentityId id : kAllIdentities) {
        for (double t : {-1.0, 0.3, 1.1}) {
            const double r0 = identity_residual(id, t, PhysParams(1.0, 1.0, 1.0, 0.0));
            for (double n : {0.5, 1.0, 7.25}) CHECK(identity_residual(id, t, PhysParams(1.0, 1.0, 1.0, n)) == r0);
        }
    }
}

TEST_CASE("identity names round-trip") {
    for (IdentityId id : kAllIdentities) CHECK(parse_identity(to_string(id)) == id);
    CHECK(to_string(IdentityId::Main) == "MAIN");
    CHECK_FALSE(parse_identity("A4").has_value());
}

TEST_CASE("adjoint series") {
    const PhysParams p;
    const Sl2Matrix x2 = generator_matrix(GeneratorId::X2, p);
    const Sl2Matrix d = generator_matrix(GeneratorId::D, p);
    CHECK(adjoint_series_check(Sl2Matrix{}, x2, 1) == 0.0);
    // ad_{0.1 D} X2 = -0.4i X2, so the truncation error is |X2| times the exponential-series tail at 0.4.
    Complex tail = 0.0;
    Complex term = 1.0;
    for (int k = 1; k < 40; ++k) {
        term *= Complex(0.0, -0.4) / double(k);
        if (k > 10) tail += term;
    }
    const double r10 = adjoint_series_check(Complex(0.1) * d, x2, 10);
    CHECK(std::abs(r10 - 2.0 * std::abs(tail)) < 1e-15);
    CHECK(r10 > 1e-12);
    CHECK(adjoint_series_check(Complex(0.1) * d, x2, 11) < 1e-12);

    const Sl2Matrix g = Complex(0.5 / d.operator_norm()) * d;
    double previous = adjoint_series_check(g, x2, 1);
    for (int terms = 2; terms <= 8; ++terms) {
        const double r = adjoint_series_check(g, x2, terms);
        CHECK(r < previous);
        previous = r;
    }
}
