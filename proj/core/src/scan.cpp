#include "qgt/scan.hpp"

#include "qgt/mixed_geometry.hpp"
#include "qgt/pure_geometry.hpp"
#include "qgt/random.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace qgt {

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char c : s) {
        if (c == sep) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

bool is_temperature_axis(const std::string& name) { return name == "T" || name == "beta"; }

}  // namespace

double parse_number(const std::string& token) {
    const std::string t = trim(token);
    if (t.empty()) throw ConfigError("expected a number, got an empty field");
    const auto pos = t.rfind("pi");
    if (pos != std::string::npos && pos + 2 == t.size()) {
        const std::string head = trim(t.substr(0, pos));
        if (head.empty()) return M_PI;
        if (head == "-") return -M_PI;
        if (head == "+") return M_PI;
        return parse_number(head) * M_PI;
    }
    double value = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        throw ConfigError("cannot parse number '" + t + "'");
    }
    return value;
}

std::vector<double> GridAxis::values() const {
    std::vector<double> v;
    v.reserve(count);
    if (endpoint_exclusive) {
        for (std::size_t i = 0; i < count; ++i) {
            v.push_back(min + (max - min) * double(i) / double(count));
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            v.push_back(min + (max - min) * double(i) / double(count - 1));
        }
    }
    return v;
}

const std::vector<std::string>& known_quantities() {
    static const std::vector<std::string> q = {
        "fs-qgt",          "berry-curvature", "berry-phase",       "hs-metric",
        "bures-metric",    "uhlmann-metric",  "uhlmann-form",      "bures-distance",
        "sjoqvist-distance", "holonomy",      "pythagorean-pure",  "pythagorean-mixed",
        "t-sweep"};
    return q;
}

namespace {

bool quantity_needs_temperature(const std::string& q) {
    static const std::vector<std::string> mixed = {
        "hs-metric",      "bures-metric",      "uhlmann-metric", "uhlmann-form",
        "bures-distance", "sjoqvist-distance", "holonomy",       "pythagorean-mixed"};
    return std::find(mixed.begin(), mixed.end(), q) != mixed.end();
}

bool quantity_is_grid(const std::string& q) {
    static const std::vector<std::string> grid = {
        "fs-qgt",       "berry-curvature", "hs-metric",         "bures-metric",
        "uhlmann-metric", "uhlmann-form",  "bures-distance",    "sjoqvist-distance",
        "pythagorean-pure", "pythagorean-mixed"};
    return std::find(grid.begin(), grid.end(), q) != grid.end();
}

bool quantity_is_loop(const std::string& q) { return q == "berry-phase" || q == "holonomy"; }

bool quantity_allows_temperature_axis(const std::string& q) {
    static const std::vector<std::string> ok = {"hs-metric", "bures-metric", "uhlmann-metric",
                                                "uhlmann-form"};
    return std::find(ok.begin(), ok.end(), q) != ok.end();
}

}  // namespace

void ScanConfig::validate() const {
    if (model_name.empty()) throw ConfigError("model: missing (expected one of paramagnet, twoband, random)");
    const auto names = model_names();
    if (std::find(names.begin(), names.end(), model_name) == names.end()) {
        throw ConfigError("model: unknown model '" + model_name + "'");
    }
    const auto& quantities = known_quantities();
    if (std::find(quantities.begin(), quantities.end(), quantity) == quantities.end()) {
        throw ConfigError("quantity: unknown quantity '" + quantity + "'");
    }
    if (format != "csv" && format != "json") {
        throw ConfigError("format: expected csv or json, got '" + format + "'");
    }
    if (quantity_needs_temperature(quantity) && !temperature) {
        bool has_t_axis = false;
        for (const auto& axis : grid) has_t_axis |= is_temperature_axis(axis.param);
        if (!has_t_axis) {
            throw ConfigError("temperature: quantity '" + quantity +
                              "' needs a temperature (temperature=..., beta=..., or a T grid axis)");
        }
    }

    const ParameterizedModel model = build_model();
    const auto& params = model.param_names();

    if (quantity_is_grid(quantity)) {
        if (grid.empty()) throw ConfigError("grid: quantity '" + quantity + "' needs grid axes");
        std::vector<std::string> seen;
        for (const auto& axis : grid) {
            if (axis.count < 2) {
                throw ConfigError("grid." + axis.param + ": count must be >= 2, got " +
                                  std::to_string(axis.count));
            }
            if (!(axis.max > axis.min)) {
                throw ConfigError("grid." + axis.param + ": max must exceed min");
            }
            if (std::find(seen.begin(), seen.end(), axis.param) != seen.end()) {
                throw ConfigError("grid." + axis.param + ": duplicate axis");
            }
            seen.push_back(axis.param);
            if (is_temperature_axis(axis.param)) {
                if (!quantity_allows_temperature_axis(quantity)) {
                    throw ConfigError("grid." + axis.param + ": temperature axis not supported for quantity '" +
                                      quantity + "'");
                }
                if (axis.min <= 0.0) {
                    throw ConfigError("grid." + axis.param + ": temperature/beta values must be > 0");
                }
                continue;
            }
            if (std::find(params.begin(), params.end(), axis.param) == params.end()) {
                throw ConfigError("grid." + axis.param + ": model '" + model_name +
                                  "' has no parameter '" + axis.param + "'");
            }
        }
        // Parameters that are not gridded must be pinned by `at`.
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (std::find(seen.begin(), seen.end(), params[i]) != seen.end()) continue;
            if (!at || at->size() != model.param_count()) {
                throw ConfigError("at: parameter '" + params[i] +
                                  "' is not gridded; provide all parameters via at=...");
            }
        }
        if (at && at->size() != model.param_count()) {
            throw ConfigError("at: expected " + std::to_string(model.param_count()) + " values");
        }
        if (quantity == "bures-distance" || quantity == "sjoqvist-distance") {
            if (!ref || ref->size() != model.param_count()) {
                throw ConfigError("ref: distance scans need a reference point with " +
                                  std::to_string(model.param_count()) + " values");
            }
        }
    } else if (quantity_is_loop(quantity)) {
        if (loop.kind == LoopSpec::Kind::None) {
            throw ConfigError("loop: quantity '" + quantity + "' needs a loop spec");
        }
        if (loop.kind != LoopSpec::Kind::Points &&
            (!at || at->size() != model.param_count())) {
            throw ConfigError("at: circle/sweep loops need a base point with all parameters");
        }
        if (loop.kind != LoopSpec::Kind::Points && loop.count < 3) {
            throw ConfigError("loop.count: need at least 3 points");
        }
    } else if (quantity == "t-sweep") {
        if (!at || at->size() != model.param_count()) {
            throw ConfigError("at: t-sweep needs a parameter point with " +
                              std::to_string(model.param_count()) + " values");
        }
        if (betas.size() < 2) throw ConfigError("beta-grid: t-sweep needs at least 2 beta values");
        for (const double b : betas) {
            if (!(b > 0.0)) throw ConfigError("beta-grid: beta values must be > 0");
        }
    }
    if (out_path.empty()) throw ConfigError("out: missing output path");
    plan.validate();
}

ParameterizedModel ScanConfig::build_model() const {
    std::map<std::string, double> options = model_options;
    if (model_name == "random" && options.find("seed") == options.end()) {
        options["seed"] = static_cast<double>(seed);
    }
    try {
        return make_model(model_name, options, temperature);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
}

ScanConfig parse_config_text(const std::string& text, const std::string& origin) {
    ScanConfig config;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) fail("empty value for '" + key + "'");
        try {
            if (key == "model") {
                config.model_name = value;
            } else if (key == "quantity") {
                config.quantity = value;
            } else if (key == "out") {
                config.out_path = value;
            } else if (key == "format") {
                config.format = value;
            } else if (key == "seed") {
                config.seed = static_cast<std::uint64_t>(parse_number(value));
            } else if (key == "threads") {
                config.threads = static_cast<unsigned>(parse_number(value));
            } else if (key == "temperature") {
                config.temperature = parse_number(value);
            } else if (key == "beta") {
                const double beta = parse_number(value);
                if (!(beta > 0.0)) fail("beta must be > 0");
                config.temperature = 1.0 / beta;
            } else if (key == "fd-step") {
                config.plan.step = parse_number(value);
                config.plan_explicit = true;
            } else if (key == "fd-scheme") {
                if (value == "central-2") {
                    config.plan.scheme = FdScheme::Central2;
                } else if (value == "central-4") {
                    config.plan.scheme = FdScheme::Central4;
                } else {
                    fail("fd-scheme must be central-2 or central-4");
                }
                config.plan_explicit = true;
            } else if (key == "pin-timestamp") {
                config.pinned_timestamp = value;
            } else if (key == "at") {
                const auto parts = split(value, ',');
                ParamPoint p(parts.size());
                for (std::size_t i = 0; i < parts.size(); ++i) p[i] = parse_number(parts[i]);
                config.at = p;
            } else if (key == "ref") {
                const auto parts = split(value, ',');
                ParamPoint p(parts.size());
                for (std::size_t i = 0; i < parts.size(); ++i) p[i] = parse_number(parts[i]);
                config.ref = p;
            } else if (key.rfind("grid.", 0) == 0) {
                GridAxis axis;
                axis.param = key.substr(5);
                auto parts = split(value, ':');
                if (parts.size() == 4) {
                    if (parts[3] == "exclusive") {
                        axis.endpoint_exclusive = true;
                    } else if (parts[3] == "inclusive") {
                        axis.endpoint_exclusive = false;
                    } else {
                        fail("grid flag must be inclusive or exclusive");
                    }
                    parts.pop_back();
                }
                if (parts.size() != 3) fail("grid axis must be 'min : max : count [: exclusive]'");
                axis.min = parse_number(parts[0]);
                axis.max = parse_number(parts[1]);
                axis.count = static_cast<std::size_t>(parse_number(parts[2]));
                config.grid.push_back(std::move(axis));
            } else if (key == "beta-grid") {
                auto parts = split(value, ':');
                bool log_spaced = false;
                if (parts.size() == 4) {
                    if (parts[3] == "log") {
                        log_spaced = true;
                    } else if (parts[3] != "linear") {
                        fail("beta-grid flag must be linear or log");
                    }
                    parts.pop_back();
                }
                if (parts.size() != 3) fail("beta-grid must be 'min : max : count [: log]'");
                const double lo = parse_number(parts[0]);
                const double hi = parse_number(parts[1]);
                const auto count = static_cast<std::size_t>(parse_number(parts[2]));
                if (count < 2 || !(hi > lo) || !(lo > 0.0)) fail("bad beta-grid range");
                for (std::size_t i = 0; i < count; ++i) {
                    const double f = double(i) / double(count - 1);
                    config.betas.push_back(log_spaced ? lo * std::pow(hi / lo, f)
                                                      : lo + (hi - lo) * f);
                }
            } else if (key == "loop") {
                if (value == "circle") {
                    config.loop.kind = LoopSpec::Kind::Circle;
                } else if (value == "sweep") {
                    config.loop.kind = LoopSpec::Kind::Sweep;
                } else if (value == "points") {
                    config.loop.kind = LoopSpec::Kind::Points;
                } else {
                    fail("loop must be circle, sweep or points");
                }
            } else if (key == "loop.coords") {
                const auto parts = split(value, ',');
                if (parts.size() != 2) fail("loop.coords needs two indices");
                config.loop.ci = static_cast<Eigen::Index>(parse_number(parts[0]));
                config.loop.cj = static_cast<Eigen::Index>(parse_number(parts[1]));
            } else if (key == "loop.coord") {
                config.loop.coord = static_cast<Eigen::Index>(parse_number(value));
            } else if (key == "loop.radius") {
                config.loop.radius = parse_number(value);
            } else if (key == "loop.count") {
                config.loop.count = static_cast<std::size_t>(parse_number(value));
            } else if (key == "loop.from") {
                config.loop.from = parse_number(value);
            } else if (key == "loop.to") {
                config.loop.to = parse_number(value);
            } else if (key == "loop.points") {
                for (const auto& chunk : split(value, ';')) {
                    const auto parts = split(chunk, ',');
                    ParamPoint p(parts.size());
                    for (std::size_t i = 0; i < parts.size(); ++i) p[i] = parse_number(parts[i]);
                    config.loop.points.push_back(std::move(p));
                }
            } else if (key == "omega0" || key == "mu" || key == "N" || key == "k" ||
                       key == "model-seed") {
                config.model_options[key == "model-seed" ? "seed" : key] = parse_number(value);
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
    return config;
}

ScanConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

namespace {

std::string iso_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ParamLoop build_loop(const ScanConfig& config, const ParameterizedModel& model) {
    switch (config.loop.kind) {
        case LoopSpec::Kind::Circle:
            return ParamLoop::circle(*config.at, config.loop.ci, config.loop.cj,
                                     config.loop.radius, config.loop.count);
        case LoopSpec::Kind::Sweep:
            return ParamLoop::coordinate_sweep(*config.at, config.loop.coord, config.loop.from,
                                               config.loop.to, config.loop.count);
        case LoopSpec::Kind::Points: {
            auto pts = config.loop.points;
            if (pts.empty()) throw ConfigError("loop.points: no points given");
            for (const auto& p : pts) {
                if (p.size() != model.param_count()) {
                    throw ConfigError("loop.points: point dimension mismatch");
                }
            }
            if (pts.front() != pts.back()) pts.push_back(pts.front());
            return ParamLoop(std::move(pts));
        }
        case LoopSpec::Kind::None:
            break;
    }
    throw ConfigError("loop: missing loop spec");
}

struct GridPlan {
    std::vector<GridAxis> axes;       // model-parameter order, temperature axis last
    std::vector<std::vector<double>> values;
    std::vector<Eigen::Index> param_index;  // -1 for the temperature axis
    bool beta_axis = false;
    std::size_t total = 0;

    std::vector<double> coords_for(std::size_t row) const {
        std::vector<double> c(axes.size());
        std::size_t rest = row;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const auto& vals = values[a];
            c[a] = vals[rest % vals.size()];
            rest /= vals.size();
        }
        return c;
    }
};

GridPlan make_grid_plan(const ScanConfig& config, const ParameterizedModel& model) {
    GridPlan plan;
    const auto& params = model.param_names();
    for (const auto& name : params) {
        for (const auto& axis : config.grid) {
            if (axis.param == name) plan.axes.push_back(axis);
        }
    }
    for (const auto& axis : config.grid) {
        if (is_temperature_axis(axis.param)) {
            plan.axes.push_back(axis);
            plan.beta_axis = axis.param == "beta";
        }
    }
    plan.total = 1;
    for (const auto& axis : plan.axes) {
        plan.values.push_back(axis.values());
        plan.total *= axis.count;
        if (is_temperature_axis(axis.param)) {
            plan.param_index.push_back(-1);
        } else {
            plan.param_index.push_back(static_cast<Eigen::Index>(
                std::find(params.begin(), params.end(), axis.param) - params.begin()));
        }
    }
    return plan;
}

void tensor_columns(std::vector<std::string>& cols, const std::string& base, Eigen::Index k,
                    bool complex_parts) {
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const std::string cell = base + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
            if (complex_parts) {
                cols.push_back(cell + ".re");
                cols.push_back(cell + ".im");
            } else {
                cols.push_back(cell);
            }
        }
    }
}

void append_tensor(std::vector<double>& row, const RealMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
}

void append_tensor_complex(std::vector<double>& row, const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j).real());
            row.push_back(m(i, j).imag());
        }
    }
}

/// Run `compute(i)` for i in [0, n) on the requested number of workers,
/// gathering results and failures in input order.
void parallel_rows(std::size_t n, unsigned threads,
                   const std::function<std::vector<double>(std::size_t)>& compute,
                   std::size_t row_width, std::vector<std::vector<double>>& rows,
                   std::vector<std::string>& failures) {
    rows.assign(n, {});
    failures.assign(n, "");
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            try {
                rows[i] = compute(i);
            } catch (const std::exception& e) {
                rows[i].assign(row_width, std::nan(""));
                failures[i] = e.what();
            }
        }
    };
    const unsigned nthreads = std::max(1u, threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
}

}  // namespace

ScanOutcome run_scan(const ScanConfig& config) {
    config.validate();
    const ParameterizedModel model = config.build_model();
    const Eigen::Index k = model.param_count();

    DifferentiationPlan plan = config.plan;
    if (config.quantity == "t-sweep" && !config.plan_explicit) {
        plan = DifferentiationPlan::central4();  // cancellation-heavy regime
    }

    ScanOutcome outcome;
    ResultTable& table = outcome.table;
    table.metadata["tool"] = "qgt";
    table.metadata["version"] = kToolVersion;
    table.metadata["model"] = model.name();
    {
        std::ostringstream opts;
        for (const auto& [key, value] : config.model_options) {
            opts << key << "=" << format_double(value) << ";";
        }
        if (config.temperature) opts << "temperature=" << format_double(*config.temperature) << ";";
        if (!opts.str().empty()) table.metadata["model-options"] = opts.str();
    }
    table.metadata["quantity"] = config.quantity;
    table.metadata["seed"] = std::to_string(config.seed);
    table.metadata["fd-step"] = format_double(plan.step);
    table.metadata["fd-scheme"] = plan.scheme == FdScheme::Central2 ? "central-2" : "central-4";
    table.metadata["timestamp"] =
        config.pinned_timestamp ? *config.pinned_timestamp : iso_utc_now();

    const auto& q = config.quantity;

    if (quantity_is_loop(q)) {
        const ParamLoop loop = build_loop(config, model);
        std::vector<double> row;
        if (q == "berry-phase") {
            table.columns = {"theta_B"};
            row.push_back(berry_phase(model, loop));
        } else {
            tensor_columns(table.columns, "U", model.dim(), /*complex_parts=*/true);
            table.columns.push_back("unitarity_residual");
            const Matrix holonomy = uhlmann_holonomy(model, loop, plan);
            append_tensor_complex(row, holonomy);
            row.push_back(max_abs(Matrix(holonomy.adjoint() * holonomy -
                                         Matrix::Identity(model.dim(), model.dim()))));
        }
        table.rows.push_back(std::move(row));
        return outcome;
    }

    if (q == "t-sweep") {
        table.columns = {"beta", "T"};
        tensor_columns(table.columns, "g_B", k, false);
        tensor_columns(table.columns, "g_FS", k, false);
        table.columns.push_back("max_abs_diff");
        const RealMatrix fs = fubini_study_metric(model, *config.at, plan).entries();
        const std::size_t width = table.columns.size();
        std::vector<std::vector<double>> rows;
        std::vector<std::string> failures;
        parallel_rows(
            config.betas.size(), config.threads,
            [&](std::size_t i) {
                const double beta = config.betas[i];
                std::vector<double> row = {beta, 1.0 / beta};
                const RealMatrix gb =
                    bures_metric(model.with_temperature(1.0 / beta), *config.at, plan).entries();
                append_tensor(row, gb);
                append_tensor(row, fs);
                row.push_back(max_abs(RealMatrix(gb - fs)));
                return row;
            },
            width, rows, failures);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!failures[i].empty()) {
                rows[i][0] = config.betas[i];  // keep coordinates readable in NaN rows
                rows[i][1] = 1.0 / config.betas[i];
                outcome.warnings.push_back("row " + std::to_string(i) + " (beta=" +
                                           format_double(config.betas[i]) + "): " + failures[i]);
            }
            table.rows.push_back(std::move(rows[i]));
        }
        return outcome;
    }

    // Grid quantities.
    const GridPlan grid = make_grid_plan(config, model);
    for (const auto& axis : grid.axes) table.columns.push_back(axis.param);

    std::optional<DensityMatrix> rho_ref;
    if (q == "bures-distance" || q == "sjoqvist-distance") {
        rho_ref = model.density_at(*config.ref);
    }
    std::optional<GaugeField> gauge;
    if (q == "pythagorean-mixed") gauge = GaugeField::random(config.seed, model.dim(), k);
    std::function<double(const ParamPoint&)> theta_field;
    if (q == "pythagorean-pure") {
        Rng rng(config.seed);
        const double c0 = rng.uniform(-1.0, 1.0);
        RealVector c = RealVector::Zero(k);
        for (Eigen::Index i = 0; i < k; ++i) c[i] = rng.uniform(-1.0, 1.0);
        theta_field = [c0, c](const ParamPoint& r) { return c0 + c.dot(r); };
    }

    if (q == "fs-qgt") {
        tensor_columns(table.columns, "g_FS", k, true);
    } else if (q == "berry-curvature") {
        tensor_columns(table.columns, "Omega", k, false);
    } else if (q == "hs-metric") {
        tensor_columns(table.columns, "g_HS", k, false);
    } else if (q == "bures-metric") {
        tensor_columns(table.columns, "g_B", k, false);
    } else if (q == "uhlmann-metric") {
        tensor_columns(table.columns, "g_U", k, false);
    } else if (q == "uhlmann-form") {
        tensor_columns(table.columns, "sigma_U", k, false);
    } else if (q == "bures-distance") {
        table.columns.push_back("d_B2");
        table.columns.push_back("fidelity");
    } else if (q == "sjoqvist-distance") {
        table.columns.push_back("d_S2");
    } else {  // pythagorean residual scans
        table.columns.push_back("residual_max");
    }
    const std::size_t width = table.columns.size();

    auto compute = [&](std::size_t index) {
        const std::vector<double> coords = grid.coords_for(index);
        ParamPoint r = config.at ? *config.at : ParamPoint::Zero(k);
        ParameterizedModel local = model;
        for (std::size_t a = 0; a < grid.axes.size(); ++a) {
            if (grid.param_index[a] >= 0) {
                r[grid.param_index[a]] = coords[a];
            } else {
                local = model.with_temperature(grid.beta_axis ? 1.0 / coords[a] : coords[a]);
            }
        }
        std::vector<double> row(coords);
        if (q == "fs-qgt") {
            append_tensor_complex(row, fubini_study_qgt(local, r, plan).entries());
        } else if (q == "berry-curvature") {
            append_tensor(row, berry_curvature_form(local, r, plan).entries());
        } else if (q == "hs-metric") {
            append_tensor(row, hilbert_schmidt_metric(local, r, plan).entries());
        } else if (q == "bures-metric") {
            append_tensor(row, bures_metric(local, r, plan).entries());
        } else if (q == "uhlmann-metric") {
            append_tensor(row, uhlmann_metric(local, r, plan).entries());
        } else if (q == "uhlmann-form") {
            append_tensor(row, uhlmann_form(local, r, plan).entries());
        } else if (q == "bures-distance") {
            const DensityMatrix rho = local.density_at(r);
            row.push_back(bures_distance_squared(rho, *rho_ref));
            row.push_back(uhlmann_fidelity(rho, *rho_ref));
        } else if (q == "sjoqvist-distance") {
            row.push_back(sjoqvist_distance_squared(local.density_at(r), *rho_ref));
        } else if (q == "pythagorean-pure") {
            row.push_back(check_pure_pythagorean(local, r, theta_field, plan).max_residual);
        } else {
            row.push_back(check_mixed_pythagorean(local, r, *gauge, plan).max_residual);
        }
        return row;
    };

    std::vector<std::vector<double>> rows;
    std::vector<std::string> failures;
    parallel_rows(grid.total, config.threads, compute, width, rows, failures);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!failures[i].empty()) {
            const auto coords = grid.coords_for(i);
            std::copy(coords.begin(), coords.end(), rows[i].begin());
            std::ostringstream where;
            where << "row " << i << " (";
            for (std::size_t a = 0; a < coords.size(); ++a) {
                if (a) where << ", ";
                where << grid.axes[a].param << "=" << format_double(coords[a]);
            }
            where << "): " << failures[i];
            outcome.warnings.push_back(where.str());
        }
        table.rows.push_back(std::move(rows[i]));
    }
    return outcome;
}

void write_outcome(const ScanOutcome& outcome, const std::string& path,
                   const std::string& format) {
    emit(outcome.table, path, format);
    if (!outcome.warnings.empty()) {
        const std::string sidecar = path + ".warnings";
        std::ofstream out(sidecar, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write warnings sidecar '" + sidecar + "'");
        for (const auto& w : outcome.warnings) out << w << "\n";
    }
}

}  // namespace qgt
