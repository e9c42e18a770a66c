#pragma once

#include "qgt/finite_diff.hpp"
#include "qgt/models.hpp"
#include "qgt/table.hpp"

#include <cstdint>
#include <optional>

namespace qgt {

/// Configuration problem (bad file, missing field, inconsistent request).
/// The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridAxis {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
    bool endpoint_exclusive = false;  // Brillouin-zone convention: [min, max)

    std::vector<double> values() const;
};

struct LoopSpec {
    enum class Kind { None, Circle, Sweep, Points };
    Kind kind = Kind::None;

    // circle
    Eigen::Index ci = 0, cj = 1;
    double radius = 0.0;
    // sweep
    Eigen::Index coord = 0;
    double from = 0.0, to = 0.0;
    // circle & sweep
    std::size_t count = 0;
    // points
    std::vector<ParamPoint> points;
};

struct ScanConfig {
    std::string model_name;
    std::map<std::string, double> model_options;  // omega0, mu, N, k, seed
    std::optional<double> temperature;
    std::string quantity;
    std::vector<GridAxis> grid;
    LoopSpec loop;
    std::optional<ParamPoint> at;   // base point for loops / sweeps
    std::optional<ParamPoint> ref;  // reference state for distance scans
    std::vector<double> betas;      // t-sweep grid
    DifferentiationPlan plan = DifferentiationPlan::central2();
    bool plan_explicit = false;  // if false, t-sweep upgrades to central-4
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out_path;
    std::string format = "csv";
    std::optional<std::string> pinned_timestamp;

    void validate() const;
    /// The model described by model_name/options/temperature.
    ParameterizedModel build_model() const;
};

const std::vector<std::string>& known_quantities();

/// Parse the declarative key-value config file (see README for the syntax).
ScanConfig parse_config_file(const std::string& path);
ScanConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");

/// Parse "0.25", "pi", "-pi", "1.2pi" and friends.
double parse_number(const std::string& token);

struct ScanOutcome {
    ResultTable table;
    /// One entry per failed row ("row 17 (kx=..., ky=...): <error>"); the
    /// corresponding table row holds NaNs. Empty on full success.
    std::vector<std::string> warnings;
};

/// Execute a scan: one row per grid point (or per beta for t-sweep, or a
/// single row for loop quantities). Deterministic for a given config + seed,
/// independent of the thread count. Per-row runtime failures become NaN rows
/// plus a warning instead of aborting the scan.
ScanOutcome run_scan(const ScanConfig& config);

/// Write outcome.table and, if there were warnings, a "<path>.warnings"
/// sidecar with one line per failed row.
void write_outcome(const ScanOutcome& outcome, const std::string& path,
                   const std::string& format);

}  // namespace qgt
