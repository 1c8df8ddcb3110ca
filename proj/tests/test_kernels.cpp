#include "doctest.h"

#include "lieprop/errors.hpp"
#include "lieprop/kernels.hpp"
#include "lieprop/numerics.hpp"

#include <cmath>
#include <numbers>

using namespace lieprop;
using namespace lieprop::kernels;
using std::numbers::pi;

namespace {

const Complex I(0.0, 1.0);

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// The free kernel written out directly, used as an oracle.
Complex free_direct(double x1, double x2, Complex t, double hbar = 1.0, double m = 1.0) {
    return std::sqrt(m / (2.0 * pi * I * hbar * t)) * std::exp(I * m * (x1 - x2) * (x1 - x2) / (2.0 * hbar * t));
}

}  // namespace

TEST_CASE("effective time") {
    CHECK(effective_time(0.7, 0.0) == 0.7);
    CHECK(effective_time(0.7, 2.0) == doctest::Approx(std::sin(1.4) / 2.0).epsilon(1e-15));
    CHECK(std::abs(effective_time(Complex(0.7, -0.1), 2.0) - std::sin(Complex(1.4, -0.2)) / 2.0) < 1e-15);
}

TEST_CASE("free kernel") {
    const PhysParams p(1.0, 1.0, 0.0, 0.5);
    const Complex k = free_kernel({1.3, 1.3, 1.0}, p).value;
    const double a = 1.0 / (2.0 * std::sqrt(pi));
    CHECK(std::abs(k - Complex(a, -a)) < 1e-15);
    CHECK(k.real() == doctest::Approx(0.28209).epsilon(1e-5));

    for (double d : {0.0, 0.4, 3.0, -7.0}) {
        CHECK(std::abs(free_kernel({1.0 + d, 1.0, 0.8}, p).value) ==
              doctest::Approx(std::sqrt(1.0 / (2.0 * pi * 0.8))).epsilon(1e-14));
    }
    for (double t : {0.3, 2.0}) {
        const Complex fwd = free_kernel({0.4, 1.7, t}, p).value;
        const Complex back = free_kernel({1.7, 0.4, -t}, p).value;
        CHECK(std::abs(back - std::conj(fwd)) < 1e-15);
    }
    const PhysParams q(0.6, 2.2, 0.0, 0.5);
    CHECK(rel(free_kernel({0.4, 1.7, 0.9}, q).value, free_direct(0.4, 1.7, 0.9, 0.6, 2.2)) < 1e-14);
    CHECK_THROWS_AS(free_kernel({1.0, 1.0, 0.0}, p), DomainError);
}

TEST_CASE("oscillator kernel") {
    const PhysParams p;
    const Complex k = sho_kernel({1.0, 1.0, pi / 2.0}, p).value;
    CHECK(std::abs(k) == doctest::Approx(1.0 / std::sqrt(2.0 * pi)).epsilon(1e-14));
    CHECK(std::arg(k) == doctest::Approx(-pi / 4.0 - 1.0).epsilon(1e-14));

    const PhysParams slow(1.0, 1.0, 1e-4, 0.5);
    const PhysParams none(1.0, 1.0, 0.0, 0.5);
    CHECK(rel(sho_kernel({1.0, 0.5, 1.0}, slow).value, free_kernel({1.0, 0.5, 1.0}, none).value) < 1e-8);

    try {
        sho_kernel({1.0, 1.0, pi - 1e-12}, p);
        FAIL("expected CausticSingularity");
    } catch (const CausticSingularity& e) {
        CHECK(e.nearest_caustic_time() == doctest::Approx(pi).epsilon(1e-15));
    }
    CHECK(nearest_caustic(2.9, 1.0) == doctest::Approx(pi));
    CHECK(nearest_caustic(-0.2, 2.0) == 0.0);

    const KernelValue near = sho_kernel({1.0, 1.0, pi - 1e-6}, p);
    CHECK(near.branch == BranchNote::NearCaustic);
    CHECK(sho_kernel({1.0, 1.0, 1.0}, p).branch == BranchNote::Principal);
}

TEST_CASE("radial kernel without oscillator") {
    const PhysParams p(1.0, 1.0, 0.0, 0.0);
    const Complex k = radial_h0_kernel({1.0, 1.0, 1.0}, p).value;
    // (1/i) I0(-i) e^{i} with I0(-i) = J0(1)
    const Complex expected = -I * std::cyl_bessel_j(0.0, 1.0) * std::exp(I);
    CHECK(rel(k, expected) < 1e-14);

    for (double n : {0.0, 0.5, 1.0, 2.5, 4.3}) {
        const PhysParams q = p.with_order(n);
        for (double t : {0.1, 0.77, 3.0}) {
            CHECK(radial_h0_kernel({0.6, 2.1, t}, q).value == radial_h0_kernel({2.1, 0.6, t}, q).value);
        }
    }
    CHECK_THROWS_AS(radial_h0_kernel({0.0, 1.0, 1.0}, p), DomainError);
    CHECK_THROWS_AS(radial_h0_kernel({1.0, -1.0, 1.0}, p), DomainError);
    CHECK_THROWS_AS(radial_h0_kernel({1.0, 1.0, 0.0}, p), DomainError);
}

TEST_CASE("n = 1/2 radial kernels are image formulas") {
    const PhysParams h0(1.0, 1.0, 0.0, 0.5);
    const PhysParams sho(1.0, 1.0, 1.0, 0.5);
    for (double x1 : {0.3, 1.0, 2.7}) {
        for (double x2 : {0.5, 1.9}) {
            for (double t : {0.2, 1.0, 4.0}) {
                const Complex image = free_direct(x1, x2, t) - free_direct(x1, -x2, t);
                CHECK(rel(radial_kernel_bessel_form(KernelKind::RadialH0, {x1, x2, t}, h0).value, image) < 1e-12);
                CHECK(rel(radial_h0_kernel({x1, x2, t}, h0).value, image) < 1e-12);
            }
            const KernelPoint pt{x1, x2, pi / 4.0};
            const Complex image = sho_kernel(pt, sho).value - sho_kernel({x1, -x2, pi / 4.0}, sho).value;
            CHECK(rel(radial_kernel_bessel_form(KernelKind::RadialSho, pt, sho).value, image) < 1e-12);
            CHECK(rel(image_kernel(KernelKind::RadialSho, pt, sho).value, image) < 1e-15);
        }
    }
}

TEST_CASE("radial oscillator kernel") {
    for (double n : {0.0, 1.0, 2.5}) {
        const PhysParams slow(1.0, 1.0, 1e-4, n);
        const PhysParams none(1.0, 1.0, 0.0, n);
        const KernelPoint pt{1.0, 0.5, 1.0};
        CHECK(rel(radial_sho_kernel(pt, slow).value, radial_h0_kernel(pt, none).value) < 1e-8);
    }
    const PhysParams p(1.0, 1.0, 1.0, 1.5);
    CHECK_THROWS_AS(radial_sho_kernel({1.0, 1.0, pi}, p), CausticSingularity);
    CHECK_THROWS_AS(radial_sho_kernel({-1.0, 1.0, 1.0}, p), DomainError);
    CHECK(radial_sho_kernel({0.4, 1.3, 0.9}, p).value == radial_sho_kernel({1.3, 0.4, 0.9}, p).value);

    // Against the Bessel form with std::cyl_bessel_j on the imaginary axis.
    for (double n : {0.0, 0.7, 1.5, 3.0}) {
        const PhysParams q(0.8, 1.4, 1.1, n);
        const double x1 = 1.2, x2 = 0.9, t = 0.6;
        const double s = std::sin(q.omega() * t);
        const double y = q.mass() * q.omega() * x1 * x2 / (q.hbar() * s);
        const Complex expected = q.mass() * q.omega() * std::sqrt(x1 * x2) / (I * q.hbar() * s) *
                                 std::polar(1.0, -n * pi / 2.0) * std::cyl_bessel_j(n, y) *
                                 std::exp(I * q.mass() * q.omega() / (2.0 * q.hbar()) * (x1 * x1 + x2 * x2) *
                                          std::cos(q.omega() * t) / s);
        CHECK(rel(radial_sho_kernel({x1, x2, t}, q).value, expected) < 1e-12);
    }
}

TEST_CASE("time reversal for all four kernels") {
    for (double n : {0.0, 0.5, 1.5}) {
        const PhysParams p(1.0, 1.0, 0.8, n);
        for (KernelKind kind : {KernelKind::Free, KernelKind::Sho, KernelKind::RadialH0, KernelKind::RadialSho}) {
            for (double t : {0.3, 1.4}) {
                const Complex fwd = evaluate_kernel(kind, {0.7, 1.6, t}, p).value;
                const Complex back = evaluate_kernel(kind, {0.7, 1.6, -t}, p).value;
                CHECK(std::abs(back - std::conj(fwd)) < 1e-13 * std::abs(fwd));
                CHECK(evaluate_kernel(kind, {1.6, 0.7, t}, p).value == fwd);
            }
        }
    }
}

TEST_CASE("short-time behavior along a rotated time ray") {
    // On the real axis the image contribution keeps the same modulus as t -> 0, so the
    // ratio is compared along t = s e^{-i phi}, where that contribution is exponentially small.
    const double phi = 0.3;
    for (double n : {0.0, 1.5, 2.5}) {
        const PhysParams p(1.0, 1.0, 1.0, n);
        std::vector<double> errors;
        for (int k = 0; k <= 4; ++k) {
            const Complex t = std::polar(0.05 / std::pow(2.0, k), -phi);
            const Complex ratio = kernel_at_complex_time(KernelKind::RadialSho, 1.0, 1.2, t, p) /
                                  kernel_at_complex_time(KernelKind::Free, 1.0, 1.2, t, p);
            errors.push_back(std::abs(ratio - 1.0));
        }
        for (std::size_t k = 1; k < errors.size(); ++k) {
            const double order = std::log2(errors[k - 1] / errors[k]);
            CHECK(order == doctest::Approx(1.0).epsilon(0.15));
        }
        CHECK(errors.back() < 3e-3 * std::max(1.0, n * n));
    }
    // n = 1/2: the ratio tends to 1 beyond all orders.
    const PhysParams half(1.0, 1.0, 0.0, 0.5);
    const Complex t = std::polar(0.01, -phi);
    const Complex r = kernel_at_complex_time(KernelKind::RadialH0, 1.0, 1.2, t, half) /
                      kernel_at_complex_time(KernelKind::Free, 1.0, 1.2, t, half);
    CHECK(std::abs(r - 1.0) < 1e-12);
}

TEST_CASE("complex-time kernels agree with real-time kernels on the real axis") {
    for (double n : {0.0, 1.5}) {
        const PhysParams p(1.0, 1.0, 0.9, n);
        for (KernelKind kind : {KernelKind::Free, KernelKind::Sho, KernelKind::RadialH0, KernelKind::RadialSho}) {
            const Complex real_t = evaluate_kernel(kind, {0.8, 1.5, 0.7}, p).value;
            const Complex complex_t = kernel_at_complex_time(kind, 0.8, 1.5, Complex(0.7, 0.0), p);
            CHECK(rel(complex_t, real_t) < 1e-13);
        }
    }
}

TEST_CASE("semigroup property at complex times") {
    const Complex t1(0.4, -0.3), t2(0.3, -0.25);
    for (double n : {0.0, 0.5, 1.5}) {
        const PhysParams p(1.0, 1.0, 0.7, n);
        for (KernelKind kind : {KernelKind::Free, KernelKind::Sho, KernelKind::RadialH0, KernelKind::RadialSho}) {
            const bool radial = is_radial(kind);
            const double lo = radial ? 0.0 : -25.0;
            const double x1 = 1.1, x2 = 0.6;
            auto integrand = [&](double y) {
                if (y <= 0.0 && radial) return Complex(0.0);
                return kernel_at_complex_time(kind, x1, y, t1, p) * kernel_at_complex_time(kind, y, x2, t2, p);
            };
            const Complex lhs = numerics::integrate_panels(integrand, lo, 25.0, 400);
            const Complex rhs = kernel_at_complex_time(kind, x1, x2, t1 + t2, p);
            CHECK(rel(lhs, rhs) < 1e-6);
        }
    }
}

TEST_CASE("route reconstruction") {
    const PhysParams lam0(1.0, 1.0, 1.0, 0.5);
    for (double t : {0.3, 0.7, 1.2, 2.0}) {
        const KernelPoint pt{0.7, -1.3, t};
        CHECK(rel(kernel_via_route(RouteId::Element, pt, lam0, Domain::FullLine).value, sho_kernel(pt, lam0).value) <
              1e-12);
        // cot(2 theta) = -tan(theta) + 1/sin(2 theta)
        const double th = 0.5 * t;
        CHECK(std::abs(1.0 / std::tan(2.0 * th) - (-std::tan(th) + 1.0 / std::sin(2.0 * th))) < 1e-14);
    }
    const KernelPoint a1{0.9, 1.4, 0.4};
    CHECK(rel(kernel_via_route(RouteId::A1a, a1, lam0, Domain::FullLine).value, sho_kernel(a1, lam0).value) < 1e-12);

    const PhysParams three_halves(1.0, 1.0, 1.0, 1.5);
    const KernelPoint e{0.8, 1.1, 0.6};
    CHECK(rel(kernel_via_route(RouteId::Element, e, three_halves).value, radial_sho_kernel(e, three_halves).value) <
          1e-10);
    CHECK(kernel_via_route(RouteId::Direct, e, three_halves).value == radial_sho_kernel(e, three_halves).value);

    CHECK_THROWS_AS(kernel_via_route(RouteId::A2a, {1.0, 1.0, 0.6 * pi}, three_halves), DomainError);
    CHECK_THROWS_AS(kernel_via_route(RouteId::Element, {1.0, 1.0, 0.3}, three_halves, Domain::FullLine),
                    DomainError);
}

TEST_CASE("route equivalence over a 5 x 5 x 7 grid") {
    double worst = 0.0;
    for (double n : {0.0, 0.5, 1.5, 2.5}) {
        const PhysParams p(1.0, 1.0, 1.0, n);
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                for (int k = 0; k < 7; ++k) {
                    const KernelPoint pt{0.4 + 0.5 * i, 0.3 + 0.6 * j, 0.1 + 0.2 * k};
                    const Complex direct = radial_sho_kernel(pt, p).value;
                    for (RouteId r : {RouteId::Element, RouteId::A1a, RouteId::A2a, RouteId::A3a}) {
                        worst = std::max(worst, rel(kernel_via_route(r, pt, p).value, direct));
                    }
                }
            }
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("kernel kind names") {
    for (KernelKind k : {KernelKind::Free, KernelKind::Sho, KernelKind::RadialH0, KernelKind::RadialSho}) {
        CHECK(parse_kernel_kind(to_string(k)) == k);
    }
    CHECK_FALSE(parse_kernel_kind("nonsense").has_value());
    CHECK(is_radial(KernelKind::RadialH0));
    CHECK_FALSE(is_radial(KernelKind::Sho));
}
