#include "lieprop/cli.hpp"

#include "lieprop/errors.hpp"
#include "lieprop/evolve.hpp"
#include "lieprop/oracle.hpp"
#include "lieprop/sl2rep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

namespace lieprop::cli {
namespace {

using kernels::KernelKind;
using std::numbers::pi;

void write_header(std::ostream& out, std::string_view command, const RunConfig& config) {
    const PhysParams& p = config.params;
    out << "# lieprop " << command << '\n';
    out << "# units: hbar=" << format_number(p.hbar()) << " mass=" << format_number(p.mass())
        << " omega=" << format_number(p.omega()) << " (default convention hbar = m = omega = 1)\n";
    out << "# coupling: n=" << format_number(p.n()) << " lambda=" << format_number(p.lambda()) << '\n';
}

std::string join(std::initializer_list<double> values) {
    std::string s;
    for (double v : values) {
        if (!s.empty()) s += ',';
        s += format_number(v);
    }
    return s;
}

}  // namespace

std::string format_number(double value) {
    std::array<char, 40> buffer{};
    std::snprintf(buffer.data(), buffer.size(), "%.17g", value);
    return buffer.data();
}

std::vector<double> Range::values() const {
    if (steps < 1) throw DomainError("range needs at least one step");
    if (steps == 1) return {min};
    std::vector<double> out(steps);
    for (int i = 0; i < steps; ++i) out[i] = min + (max - min) * i / (steps - 1);
    return out;
}

void RunConfig::validate() const {
    for (const auto& r : {t_range, x_range}) {
        if (r && (r->steps < 1 || r->max < r->min)) throw DomainError("ranges must satisfy min <= max and steps >= 1");
    }
    if (tolerance && !(*tolerance > 0.0)) throw DomainError("--tolerance must be > 0");
    if (grid_points && *grid_points < 16) throw DomainError("--grid-points must be >= 16");
    if (dt && !(*dt > 0.0)) throw DomainError("--dt must be > 0");
    for (double e : epsilon_schedule) {
        if (!(e >= 0.0 && e < 1.0)) throw DomainError("--epsilon-schedule entries must lie in [0, 1)");
    }
}

// ---------------------------------------------------------------------------

int cmd_identities(const RunConfig& config, std::ostream& out, std::ostream& log) {
    config.validate();
    const PhysParams& p = config.params;
    const double tol = config.tolerance.value_or(1e-12);
    Range range = config.t_range.value_or(
        p.omega() > 0.0 ? Range{-0.45 * pi / p.omega(), 0.45 * pi / p.omega(), 25} : Range{-1.0, 1.0, 25});
    const std::vector<double> times = range.values();

    std::ostringstream rows;
    std::vector<std::string> notices;
    double worst = 0.0;
    bool failed = false;
    for (sl2::IdentityId id : sl2::kAllIdentities) {
        int clipped = 0;
        for (double t : times) {
            if (!sl2::within_validity_window(id, t, p)) {
                ++clipped;
                continue;
            }
            const double r = sl2::identity_residual(id, t, p);
            worst = std::max(worst, r);
            failed = failed || !(r <= tol);
            rows << sl2::to_string(id) << ',' << format_number(t) << ',' << format_number(r) << '\n';
        }
        if (clipped > 0) {
            notices.push_back(std::string(sl2::to_string(id)) + ": " + std::to_string(clipped) + " of " +
                              std::to_string(times.size()) + " t-values outside the validity window were clipped");
        }
    }

    write_header(out, "identities", config);
    out << "# tolerance: " << format_number(tol) << '\n';
    for (const std::string& n : notices) {
        out << "# notice: " << n << '\n';
        log << "notice: " << n << '\n';
    }
    out << "identity_id,t,residual\n" << rows.str();
    out << "# max_residual=" << format_number(worst) << " status=" << (failed ? "FAIL" : "PASS") << '\n';
    if (failed) log << "identities: residual above tolerance " << format_number(tol) << '\n';
    return failed ? kToleranceFailure : 0;
}

// ---------------------------------------------------------------------------

int cmd_kernel(const RunConfig& config, std::ostream& out, std::ostream& log) {
    config.validate();
    const PhysParams& p = config.params;
    const KernelKind kind = config.kernel.value_or(KernelKind::RadialSho);
    const std::vector<double> times = config.t_range.value_or(Range{0.25, 1.0, 4}).values();
    const std::vector<double> xs = config.x_range.value_or(Range{0.5, 2.5, 5}).values();
    if (kernels::is_radial(kind) && xs.front() <= 0.0) {
        throw DomainError("radial kernels need --x-min > 0");
    }
    if (config.image_formula) {
        if (!kernels::is_radial(kind)) throw DomainError("--image applies to radial kernels only");
        if (!p.order().is_half()) throw DomainError("--image is the n = 1/2 kernel; set --order-n 0.5");
    }

    std::ostringstream rows;
    int evaluated = 0;
    for (double t : times) {
        try {
            (void)kernels::evaluate_kernel(kind, {xs.front(), xs.front(), t}, p);
        } catch (const CausticSingularity& e) {
            rows << "# skip: t=" << format_number(t) << " caustic, nearest caustic t=" << format_number(e.nearest_caustic_time())
                 << '\n';
            continue;
        } catch (const DomainError&) {
            rows << "# skip: t=" << format_number(t) << " singular (t = 0)\n";
            continue;
        }
        ++evaluated;
        for (double x1 : xs) {
            for (double x2 : xs) {
                const kernels::KernelPoint pt{x1, x2, t};
                const Complex k = config.image_formula ? kernels::image_kernel(kind, pt, p).value
                                                       : kernels::evaluate_kernel(kind, pt, p).value;
                rows << join({x1, x2, t, k.real(), k.imag(), std::abs(k)}) << '\n';
            }
        }
    }
    if (evaluated == 0) throw DomainError("every requested t is caustic or singular");

    write_header(out, "kernel", config);
    out << "# kernel: " << kernels::to_string(kind) << '\n';
    out << "x1,x2,t,re,im,abs\n" << rows.str();
    (void)log;
    return 0;
}

// ---------------------------------------------------------------------------

namespace {

struct ComparePoint {
    double x1, x2, t;
};

constexpr std::array<ComparePoint, 20> kDefaultSuite = {{
    {1.0, 1.0, 1.0},  {1.0, 2.0, 0.5},  {0.5, 1.5, 1.0},  {2.0, 2.0, 2.0},  {1.5, 0.7, 0.3},
    {3.0, 2.5, 1.5},  {2.0, 3.0, 0.8},  {0.3, 0.4, 0.2},  {0.8, 1.2, 0.6},  {1.2, 0.9, 1.3},
    {2.5, 1.0, 0.9},  {0.6, 2.2, 1.1},  {1.8, 1.8, 0.7},  {0.4, 0.9, 0.45}, {2.2, 2.8, 1.7},
    {1.1, 1.6, 0.35}, {0.9, 0.5, 1.9},  {2.7, 1.4, 1.2},  {1.3, 2.4, 0.55}, {0.7, 0.7, 0.25},
}};

}  // namespace

int cmd_oracle_compare(const RunConfig& config, std::ostream& out, std::ostream& log) {
    config.validate();
    const double tol = config.tolerance.value_or(1e-6);
    const std::vector<double> orders =
        config.order_given ? std::vector<double>{config.params.n()} : std::vector<double>{0.0, 0.5, 1.0, 2.5};

    std::vector<ComparePoint> points;
    if (config.t_range || config.x_range) {
        const std::vector<double> ts = config.t_range.value_or(Range{1.0, 1.0, 1}).values();
        const std::vector<double> xs = config.x_range.value_or(Range{0.5, 2.5, 3}).values();
        if (xs.front() <= 0.0) throw DomainError("oracle-compare needs --x-min > 0");
        for (double t : ts) {
            for (double x1 : xs) {
                for (double x2 : xs) points.push_back({x1, x2, t});
            }
        }
    } else {
        points.assign(kDefaultSuite.begin(), kDefaultSuite.end());
    }

    const bool oscillator = config.params.omega() > 0.0;
    std::ostringstream rows;
    bool failed = false;
    int flagged = 0;
    double worst = 0.0;
    for (double n : orders) {
        const PhysParams p = config.params.with_order(n);
        for (const ComparePoint& cp : points) {
            const kernels::KernelPoint pt{cp.x1, cp.x2, cp.t};
            Complex closed;
            try {
                closed = oscillator ? kernels::radial_sho_kernel(pt, p).value : kernels::radial_h0_kernel(pt, p).value;
            } catch (const CausticSingularity& e) {
                rows << "# skip: t=" << format_number(cp.t) << " n=" << format_number(n)
                     << " caustic, nearest caustic t=" << format_number(e.nearest_caustic_time()) << '\n';
                continue;
            }
            std::string status = "ok";
            oracle::HankelResult r;
            try {
                if (config.epsilon_schedule.empty()) {
                    r = oracle::refined_hankel_oracle(pt, p);
                } else {
                    const kernels::KernelPoint spectral_pt{cp.x1, cp.x2, kernels::effective_time(cp.t, p.omega())};
                    numerics::QuadratureSpec spec;
                    spec.epsilon_schedule = config.epsilon_schedule;
                    oracle::size_hankel_quadrature(spec, spectral_pt, p);
                    r = oscillator ? oracle::hankel_sho_oracle(pt, p, spec)
                                   : oracle::hankel_kernel_oracle(pt, p.order(), p, spec);
                }
            } catch (const NonConvergence& e) {
                status = "nonconverged";
                r.value = Complex(std::nan(""), std::nan(""));
                r.error_estimate = e.achieved_estimate();
            }
            const double scale = std::abs(closed);
            const double rel = std::abs(r.value - closed) / scale;
            const double est = r.error_estimate / scale;
            if (status == "ok") {
                worst = std::max(worst, rel);
                if (!(rel <= std::max(tol, 10.0 * est))) {
                    status = "flagged";
                    failed = true;
                }
            }
            if (status != "ok") ++flagged;
            rows << join({cp.x1, cp.x2, cp.t, n, closed.real(), closed.imag(), r.value.real(), r.value.imag(), rel, est})
                 << ',' << status << '\n';
        }
    }

    RunConfig echo = config;
    write_header(out, "oracle-compare", echo);
    out << "# mode: " << (oscillator ? "radial-sho vs phases * spectral integral at sin(omega t)/omega"
                                     : "radial-h0 vs spectral integral")
        << '\n';
    out << "# tolerance: " << format_number(tol) << " (pass iff rel_err <= max(tolerance, 10 * oracle_err_estimate))\n";
    if (!config.epsilon_schedule.empty()) {
        std::string s;
        for (double e : config.epsilon_schedule) s += (s.empty() ? "" : " ") + format_number(e);
        out << "# epsilon_schedule: " << s << '\n';
    }
    out << "x1,x2,t,n,closed_re,closed_im,oracle_re,oracle_im,rel_err,oracle_err_estimate,status\n" << rows.str();
    out << "# max_rel_err=" << format_number(worst) << " flagged=" << flagged << " status=" << (failed ? "FAIL" : "PASS")
        << '\n';
    if (failed) log << "oracle-compare: " << flagged << " rows flagged\n";
    return failed ? kToleranceFailure : 0;
}

// ---------------------------------------------------------------------------

int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& log) {
    config.validate();
    const PhysParams& p = config.params;
    const KernelKind kind = config.kernel.value_or(KernelKind::RadialSho);
    const bool radial = kernels::is_radial(kind);
    const double norm_tol = config.tolerance.value_or(1e-6);
    constexpr double kCrossTol = 1e-3;

    const double x_max = config.x_range ? config.x_range->max : (radial ? 20.0 : 30.0);
    GridSpec grid;
    grid.x_max = x_max;
    grid.x_min = radial ? 0.0 : (config.x_range ? config.x_range->min : -x_max);
    grid.points = config.grid_points.value_or(radial ? 4000 : 8000);
    grid.dt = config.dt.value_or(1e-4);
    grid.validate();

    evolve::TestFunction packet{config.center, config.width, config.momentum, config.amplitude};
    packet.validate();
    if (radial && !packet.clear_of_wall()) throw DomainError("packet must satisfy center - 4 width > 0");
    const GridWavefunction psi0 = evolve::sample(packet, grid, p);
    if (oracle::boundary_contaminated(psi0)) throw DomainError("packet support reaches the outer 5% of the grid");

    // Crank-Nicolson runs alongside when its boundary realization is valid.
    const bool cn_valid = radial ? p.n() >= 0.5 : p.order().is_half();
    const bool kind_has_omega = kind == KernelKind::Sho || kind == KernelKind::RadialSho;
    const PhysParams cn_params = kind_has_omega ? p : p.with_omega(0.0);
    const bool analytic_image = kind == KernelKind::RadialH0 && p.order().is_half();
    const bool analytic_free = kind == KernelKind::Free;

    std::vector<double> times = config.t_range.value_or(Range{0.0, 1.0, 3}).values();
    std::sort(times.begin(), times.end());
    if (times.front() < 0.0) throw DomainError("evolve frames need t >= 0");

    std::ostringstream rows;
    std::vector<std::string> summary;
    bool failed = false;
    GridWavefunction cn_state = psi0;
    double cn_time = 0.0;
    for (double t : times) {
        evolve::Propagation prop;
        try {
            prop = evolve::propagate(psi0, t, kind, p);
        } catch (const CausticSingularity& e) {
            rows << "# skip: t=" << format_number(t) << " caustic, nearest caustic t=" << format_number(e.nearest_caustic_time())
                 << '\n';
            continue;
        }
        std::string line = "t=" + format_number(t) + " norm_drift=" + format_number(prop.norm_drift);
        bool ok = prop.norm_drift <= norm_tol;
        if (cn_valid) {
            const oracle::GridEvolution cn = oracle::grid_evolve(cn_state, t - cn_time, cn_params);
            cn_state = cn.psi;
            cn_time = t;
            const double d = l2_distance(prop.psi, cn.psi);
            line += " cross_oracle_l2=" + format_number(d);
            ok = ok && d <= kCrossTol;
            if (cn.boundary_contaminated) {
                line += " boundary=contaminated";
                ok = false;
            }
        }
        if (analytic_image || analytic_free) {
            GridWavefunction exact(grid);
            for (int i = 0; i < grid.size(); ++i) {
                const double x = grid.node(i);
                exact.samples[i] = t == 0.0 ? psi0.samples[i]
                                 : analytic_image ? (x > 0.0 ? evolve::image_gaussian_evolution(packet, x, t, p) : 0.0)
                                                  : evolve::free_gaussian_evolution(packet, x, t, p);
            }
            const double d = l2_distance(prop.psi, exact);
            line += " analytic_l2=" + format_number(d);
            ok = ok && d <= kCrossTol;
        }
        if (oracle::boundary_contaminated(prop.psi)) {
            line += " kernel_boundary=contaminated";
            ok = false;
        }
        line += ok ? " status=PASS" : " status=FAIL";
        failed = failed || !ok;
        summary.push_back(line);
        for (int i = 0; i < grid.size(); ++i) {
            const Complex v = prop.psi.samples[i];
            rows << join({t, grid.node(i), v.real(), v.imag(), std::norm(v)}) << '\n';
        }
    }

    write_header(out, "evolve", config);
    out << "# kernel: " << kernels::to_string(kind) << '\n';
    out << "# packet: center=" << format_number(packet.center) << " width=" << format_number(packet.width)
        << " momentum=" << format_number(packet.momentum) << " amplitude=" << format_number(packet.amplitude) << '\n';
    out << "# grid: x_min=" << format_number(grid.x_min) << " x_max=" << format_number(grid.x_max)
        << " points=" << grid.points << " dt=" << format_number(grid.dt) << '\n';
    out << "# tolerances: norm_drift=" << format_number(norm_tol) << " l2=" << format_number(kCrossTol) << '\n';
    out << "t,x,re,im,abs2\n" << rows.str();
    for (const std::string& s : summary) out << "# summary: " << s << '\n';
    if (failed) log << "evolve: an invariant exceeded its tolerance\n";
    return failed ? kToleranceFailure : 0;
}

// ---------------------------------------------------------------------------

int cmd_selftest(std::ostream& out, std::ostream& log) {
    int failures = 0;
    auto check = [&](std::string_view name, bool ok) {
        out << (ok ? "PASS " : "FAIL ") << name << '\n';
        if (!ok) ++failures;
    };
    const PhysParams unit(1.0, 1.0, 1.0, 0.5);

    double worst = 0.0;
    for (sl2::IdentityId id : sl2::kAllIdentities) {
        for (double t : {-1.2, -0.4, 0.3, 0.7, 1.1}) worst = std::max(worst, sl2::identity_residual(id, t, unit));
    }
    check("identity residuals < 1e-12", worst < 1e-12);

    const Complex sho = kernels::sho_kernel({1.0, 1.0, pi / 2.0}, unit).value;
    check("sho kernel magnitude at omega t = pi/2", std::abs(std::abs(sho) - 1.0 / std::sqrt(2.0 * pi)) < 1e-14);

    const PhysParams h0 = unit.with_omega(0.0);
    const kernels::KernelPoint pt{1.0, 2.0, 0.5};
    const Complex bessel = kernels::radial_kernel_bessel_form(KernelKind::RadialH0, pt, h0).value;
    const Complex image = kernels::image_kernel(KernelKind::RadialH0, pt, h0).value;
    check("n = 1/2 Bessel kernel equals image formula", std::abs(bessel - image) < 1e-12 * std::abs(image));

    const PhysParams three_halves = unit.with_order(1.5);
    const kernels::KernelPoint rpt{0.8, 1.3, 0.6};
    const Complex direct = kernels::radial_sho_kernel(rpt, three_halves).value;
    const Complex routed = kernels::kernel_via_route(kernels::RouteId::A1a, rpt, three_halves).value;
    check("A1a route reproduces radial kernel", std::abs(direct - routed) < 1e-10 * std::abs(direct));

    const PhysParams h0_zero = h0.with_order(0.0);
    const kernels::KernelPoint opt{1.0, 1.0, 1.0};
    const oracle::HankelResult r =
        oracle::hankel_kernel_oracle(opt, h0_zero.order(), h0_zero, oracle::hankel_quadrature_spec(opt, h0_zero));
    const Complex closed = kernels::radial_h0_kernel(opt, h0_zero).value;
    check("spectral oracle matches n = 0 kernel", std::abs(r.value - closed) < 1e-6 * std::abs(closed));

    GridSpec grid{10.0, 400, 1e-3, 0.0};
    const GridWavefunction psi = evolve::sample({4.0, 0.5, 0.0, 1.0}, grid, three_halves);
    const oracle::GridEvolution cn = oracle::grid_evolve(psi, 0.5, three_halves);
    check("Crank-Nicolson norm conservation", std::abs(cn.psi.norm() - psi.norm()) < 1e-10);

    if (failures > 0) log << "selftest: " << failures << " check(s) failed\n";
    return failures == 0 ? 0 : kToleranceFailure;
}

}  // namespace lieprop::cli
