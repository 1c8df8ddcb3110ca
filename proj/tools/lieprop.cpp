#include "lieprop/cli.hpp"
#include "lieprop/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using lieprop::cli::Range;

struct Flags {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;
    std::optional<double> order_n;
    std::optional<double> lambda;
    std::optional<double> t_min, t_max, x_min, x_max;
    std::optional<int> t_steps, x_steps;
    std::optional<int> grid_points;
    std::optional<double> tolerance;
    std::string output;
    std::string epsilon_schedule;
    std::string kernel;
    bool image = false;
    double center = 3.0;
    double width = 0.4;
    double momentum = 0.0;
    double amplitude = 1.0;
    std::optional<double> dt;
};

std::optional<Range> make_range(const std::optional<double>& lo, const std::optional<double>& hi,
                                const std::optional<int>& steps, const char* axis) {
    if (!lo && !hi && !steps) return std::nullopt;
    if (!lo || !hi) {
        throw lieprop::DomainError(std::string("--") + axis + "-min and --" + axis + "-max must be given together");
    }
    const int n = steps.value_or(*lo == *hi ? 1 : 5);
    if (n < 1) throw lieprop::DomainError(std::string("--") + axis + "-steps must be >= 1");
    if (*hi < *lo) throw lieprop::DomainError(std::string("--") + axis + "-max must be >= --" + axis + "-min");
    return Range{*lo, *hi, n};
}

std::vector<double> parse_schedule(const std::string& text) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) throw lieprop::DomainError("--epsilon-schedule: cannot parse '" + token + "'");
        out.push_back(v);
    }
    return out;
}

lieprop::cli::RunConfig build_config(const Flags& f) {
    lieprop::cli::RunConfig c;
    if (f.lambda) {
        c.params = lieprop::PhysParams::from_lambda(f.hbar, f.mass, f.omega, *f.lambda);
        c.order_given = true;
    } else {
        c.params = lieprop::PhysParams(f.hbar, f.mass, f.omega, f.order_n.value_or(0.5));
        c.order_given = f.order_n.has_value();
    }
    c.t_range = make_range(f.t_min, f.t_max, f.t_steps, "t");
    c.x_range = make_range(f.x_min, f.x_max, f.x_steps, "x");
    c.grid_points = f.grid_points;
    c.tolerance = f.tolerance;
    c.epsilon_schedule = parse_schedule(f.epsilon_schedule);
    if (!f.kernel.empty()) {
        c.kernel = lieprop::kernels::parse_kernel_kind(f.kernel);
        if (!c.kernel) throw lieprop::DomainError("--kernel: unknown kind '" + f.kernel + "'");
    }
    c.image_formula = f.image;
    c.center = f.center;
    c.width = f.width;
    c.momentum = f.momentum;
    c.amplitude = f.amplitude;
    c.dt = f.dt;
    c.validate();
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lieprop: oscillator and inverse-square propagators"};
    app.require_subcommand(1, 1);
    Flags f;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--hbar", f.hbar, "Planck constant (default 1)");
        sub->add_option("--mass", f.mass, "mass (default 1)");
        sub->add_option("--omega", f.omega, "oscillator frequency (default 1)");
        auto* order = sub->add_option("--order-n", f.order_n, "Bessel order n >= 0 (default 1/2)");
        auto* lambda = sub->add_option("--lambda", f.lambda, "inverse-square coupling lambda >= -hbar^2/4");
        order->excludes(lambda);
        lambda->excludes(order);
        sub->add_option("--t-min", f.t_min);
        sub->add_option("--t-max", f.t_max);
        sub->add_option("--t-steps", f.t_steps);
        sub->add_option("--x-min", f.x_min);
        sub->add_option("--x-max", f.x_max);
        sub->add_option("--x-steps", f.x_steps);
        sub->add_option("--grid-points", f.grid_points);
        sub->add_option("--tolerance", f.tolerance);
        sub->add_option("--output", f.output, "output CSV path (default stdout)");
        sub->add_option("--epsilon-schedule", f.epsilon_schedule, "comma-separated regulator values");
        sub->add_option("--kernel", f.kernel, "free | sho | radial-h0 | radial-sho");
        sub->add_flag("--image", f.image, "use the image formula (n = 1/2)");
        sub->add_option("--center", f.center);
        sub->add_option("--width", f.width);
        sub->add_option("--momentum", f.momentum);
        sub->add_option("--amplitude", f.amplitude);
        sub->add_option("--dt", f.dt, "Crank-Nicolson time step");
    };

    auto* identities = app.add_subcommand("identities", "residuals of the factorization identities");
    auto* kernel = app.add_subcommand("kernel", "tabulate a closed-form kernel");
    auto* oracle = app.add_subcommand("oracle-compare", "closed-form radial kernels vs the spectral integral");
    auto* evolve = app.add_subcommand("evolve", "Gaussian packet evolution frames");
    auto* selftest = app.add_subcommand("selftest", "quick internal consistency checks");
    for (auto* sub : {identities, kernel, oracle, evolve}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : lieprop::cli::kConfigError;
    }

    try {
        if (selftest->parsed()) return lieprop::cli::cmd_selftest(std::cout, std::cerr);

        const lieprop::cli::RunConfig config = build_config(f);
        std::ofstream file;
        if (!f.output.empty()) {
            file.open(f.output, std::ios::binary);
            if (!file) {
                std::cerr << "error: cannot open --output " << f.output << '\n';
                return lieprop::cli::kConfigError;
            }
        }
        std::ostream& out = f.output.empty() ? std::cout : file;
        if (identities->parsed()) return lieprop::cli::cmd_identities(config, out, std::cerr);
        if (kernel->parsed()) return lieprop::cli::cmd_kernel(config, out, std::cerr);
        if (oracle->parsed()) return lieprop::cli::cmd_oracle_compare(config, out, std::cerr);
        return lieprop::cli::cmd_evolve(config, out, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lieprop::cli::kConfigError;
    }
}
