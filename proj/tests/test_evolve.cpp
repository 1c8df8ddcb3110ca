#include "doctest.h"

#include "lieprop/errors.hpp"
#include "lieprop/evolve.hpp"
#include "lieprop/oracle.hpp"

#include <cmath>
#include <numbers>

using namespace lieprop;
using namespace lieprop::evolve;
using kernels::KernelKind;
using std::numbers::pi;

TEST_CASE("test function") {
    const TestFunction f{3.0, 0.4, 1.5, 1.0};
    const PhysParams p;
    const GridSpec grid{10.0, 4000, 1e-3, 0.0};
    CHECK(sample(f, grid, p).norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.clear_of_wall());
    CHECK_FALSE(TestFunction{1.0, 0.4, 0.0, 1.0}.clear_of_wall());
    CHECK_THROWS_AS((TestFunction{3.0, 0.0, 0.0, 1.0}.validate()), DomainError);
    CHECK(sample({0.1, 0.4, 0.0, 1.0}, grid, p).samples[0] == Complex(0.0));
}

TEST_CASE("free Gaussian closed forms") {
    const PhysParams p(1.0, 1.0, 0.0, 0.5);
    const TestFunction f{3.0, 0.4, 0.7, 1.0};
    for (double x1 : {1.0, 3.0, 5.5}) {
        for (double t : {0.1, 0.6}) {
            CHECK(std::abs(smear_kernel(f, x1, t, KernelKind::Free, p) - free_gaussian_evolution(f, x1, t, p)) < 1e-8);
        }
    }
    CHECK(std::abs(free_gaussian_evolution(f, 2.0, 0.0, p) - f(2.0, p)) < 1e-15);
    const TestFunction odd{3.0, 0.4, 0.7, 1.0};
    CHECK(std::abs(image_gaussian_evolution(odd, 0.0, 0.5, p)) < 1e-15);
}

TEST_CASE("propagation preserves the norm for every kernel") {
    const TestFunction f{5.0, 0.5, 0.0, 1.0};
    for (double n : {0.5, 1.5}) {
        const PhysParams p(1.0, 1.0, 1.0, n);
        const GridSpec half{20.0, 4000, 1e-3, 0.0};
        const GridSpec line{20.0, 4000, 1e-3, -20.0};
        for (KernelKind kind : {KernelKind::Free, KernelKind::Sho, KernelKind::RadialH0, KernelKind::RadialSho}) {
            const GridSpec& grid = kernels::is_radial(kind) ? half : line;
            for (double t : {0.3, 1.0}) CHECK(propagate(f, grid, t, kind, p).norm_drift < 1e-6);
        }
    }
}

TEST_CASE("propagation composes") {
    const PhysParams p(1.0, 1.0, 1.0, 1.5);
    const GridSpec grid{20.0, 4000, 1e-3, 0.0};
    const TestFunction f{5.0, 0.5, 0.0, 1.0};
    for (KernelKind kind : {KernelKind::RadialH0, KernelKind::RadialSho}) {
        const GridWavefunction first = propagate(f, grid, 0.3, kind, p).psi;
        const GridWavefunction both = propagate(first, 0.4, kind, p).psi;
        const GridWavefunction direct = propagate(f, grid, 0.7, kind, p).psi;
        CHECK(l2_distance(both, direct) < 1e-5);
    }
}

TEST_CASE("oscillator period: four quarter periods restore the modulus") {
    const PhysParams p(1.0, 1.0, 1.0, 0.5);
    const GridSpec grid{20.0, 4000, 1e-3, -20.0};
    const GridWavefunction psi0 = sample({3.0, 0.4, 0.0, 1.0}, grid, p);
    GridWavefunction psi = psi0;
    for (int i = 0; i < 4; ++i) psi = propagate(psi, pi / 2.0, KernelKind::Sho, p).psi;
    double worst = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        worst = std::max(worst, std::abs(std::abs(psi.samples[i]) - std::abs(psi0.samples[i])));
    }
    CHECK(worst < 1e-6);
    // A single period lands on a caustic and is refused.
    CHECK_THROWS_AS(propagate(psi0, 2.0 * pi, KernelKind::Sho, p), CausticSingularity);
}

TEST_CASE("propagation of the zero state and domain checks") {
    const PhysParams p(1.0, 1.0, 1.0, 1.5);
    const GridSpec grid{20.0, 1000, 1e-3, 0.0};
    const GridWavefunction zero(grid);
    const Propagation out = propagate(zero, 0.5, KernelKind::RadialSho, p);
    for (const Complex& v : out.psi.samples) CHECK(v == Complex(0.0));
    CHECK(out.norm_drift == 0.0);
    CHECK_THROWS_AS(propagate(zero, pi, KernelKind::RadialSho, p), CausticSingularity);
    const GridSpec line{20.0, 1000, 1e-3, -20.0};
    CHECK_THROWS_AS(propagate(GridWavefunction(line), 0.5, KernelKind::RadialSho, p), DomainError);
}

TEST_CASE("delta limit") {
    const PhysParams p(1.0, 1.0, 1.0, 1.5);
    const TestFunction f{3.0, 0.4, 0.0, 1.0};
    const std::vector<double> ts{0.02, 0.01, 0.005, 0.0025, 0.00125};
    for (KernelKind kind : {KernelKind::Free, KernelKind::Sho, KernelKind::RadialH0, KernelKind::RadialSho}) {
        const std::vector<double> e = delta_limit_check(f, 3.0, ts, kind, p);
        REQUIRE(e.size() == ts.size());
        for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i - 1] / e[i] == doctest::Approx(2.0).epsilon(0.25));
    }
    const std::vector<double> zeros = delta_limit_check({3.0, 0.4, 0.0, 0.0}, 3.0, ts, KernelKind::RadialSho, p);
    for (double z : zeros) CHECK(z == 0.0);
    const std::vector<double> increasing{0.01, 0.02};
    CHECK_THROWS_AS(delta_limit_check(f, 3.0, increasing, KernelKind::Free, p), DomainError);
    const std::vector<double> negative{0.01, -0.02};
    CHECK_THROWS_AS(delta_limit_check(f, 3.0, negative, KernelKind::Free, p), DomainError);
}

TEST_CASE("Schroedinger residual") {
    const PhysParams p(1.0, 1.0, 1.0, 1.5);
    CHECK(schrodinger_residual(KernelKind::Free, {1.0, 0.6, 1.0}, p, 1e-3, 1e-3) < 1e-6);
    for (KernelKind kind : {KernelKind::Free, KernelKind::Sho, KernelKind::RadialH0, KernelKind::RadialSho}) {
        const kernels::KernelPoint pt{1.0, 0.8, 0.7};
        const double coarse = schrodinger_residual(kind, pt, p, 1e-2, 1e-2);
        const double fine = schrodinger_residual(kind, pt, p, 5e-3, 5e-3);
        CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.125));
    }
    double previous = 1.0;
    for (double h : {1e-2, 5e-3, 2.5e-3, 1.25e-3}) {
        const double r = schrodinger_residual(KernelKind::RadialSho, {1.0, 1.0, 0.7}, p, h, h);
        CHECK(r < previous);
        previous = r;
    }
    CHECK_THROWS_AS(schrodinger_residual(KernelKind::RadialSho, {0.005, 1.0, 0.7}, p, 1e-2, 1e-2), DomainError);
    CHECK_THROWS_AS(schrodinger_residual(KernelKind::RadialSho, {1.0, 1.0, pi}, p, 1e-2, 1e-2), CausticSingularity);
}

TEST_CASE("dilation") {
    const PhysParams p;
    const GridSpec grid{20.0, 4000, 1e-3, 0.0};
    const GridWavefunction psi = sample({5.0, 0.5, 0.0, 1.0}, grid, p);

    const Dilation same = dilation_apply(psi, 0.0, p);
    CHECK(l2_distance(same.psi, psi) == 0.0);

    const Dilation d = dilation_apply(psi, 0.3, p);
    CHECK(std::abs(d.psi.norm() - psi.norm()) < 1e-10 + d.interpolation_error);
    // The peak moves from 5 to 5 e^{0.6}.
    int argmax = 0;
    for (int i = 0; i < grid.size(); ++i) {
        if (std::abs(d.psi.samples[i]) > std::abs(d.psi.samples[argmax])) argmax = i;
    }
    CHECK(grid.node(argmax) == doctest::Approx(5.0 * std::exp(0.6)).epsilon(1e-3));

    const Dilation there = dilation_apply(psi, 0.2, p);
    const Dilation back = dilation_apply(there.psi, -0.2, p);
    CHECK(l2_distance(back.psi, psi) < 10.0 * (there.interpolation_error + back.interpolation_error));

    const Dilation a = dilation_apply(dilation_apply(psi, 0.1, p).psi, 0.15, p);
    const Dilation b = dilation_apply(psi, 0.25, p);
    CHECK(l2_distance(a.psi, b.psi) < 10.0 * (a.interpolation_error + b.interpolation_error));

    CHECK_THROWS_AS(dilation_apply(psi, 0.5, p), DomainError);
}
