#pragma once

// Command implementations behind the `lieprop` executable. Each command
// writes one CSV document ('#' comment header, a column row, LF line ends,
// %.17g numbers) and returns the process exit status.

#include "lieprop/kernels.hpp"
#include "lieprop/params.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lieprop::cli {

/// Exit status when a declared tolerance is violated.
inline constexpr int kToleranceFailure = 1;
/// Exit status for configuration errors.
inline constexpr int kConfigError = 2;

struct Range {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;

    std::vector<double> values() const;
};

struct RunConfig {
    PhysParams params{1.0, 1.0, 1.0, 0.5};
    /// True when the order was given explicitly (oracle-compare then runs a single order).
    bool order_given = false;
    std::optional<Range> t_range;
    std::optional<Range> x_range;
    std::optional<int> grid_points;
    std::optional<double> tolerance;
    std::vector<double> epsilon_schedule;
    std::optional<kernels::KernelKind> kernel;
    bool image_formula = false;

    // evolve packet
    double center = 3.0;
    double width = 0.4;
    double momentum = 0.0;
    double amplitude = 1.0;
    std::optional<double> dt;

    void validate() const;
};

int cmd_identities(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_kernel(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_oracle_compare(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_selftest(std::ostream& out, std::ostream& log);

/// 17 significant digits, "%.17g".
std::string format_number(double value);

}  // namespace lieprop::cli
