// Command-line front end: scans over parameter grids, the invariant-suite
// runner, pairwise state distances, and Uhlmann holonomies.
//
// Exit codes: 0 success, 1 config error, 2 partial row failures,
// 3 verification failure.

#include "qgt/mixed_geometry.hpp"
#include "qgt/pure_geometry.hpp"
#include "qgt/scan.hpp"
#include "qgt/table.hpp"
#include "qgt/verify.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;
constexpr int kExitVerifyFailed = 3;

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

qgt::ParamPoint parse_point(const std::string& s) {
    const auto parts = split_csv(s);
    qgt::ParamPoint p(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) p[i] = qgt::parse_number(parts[i]);
    return p;
}

qgt::Matrix matrix_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qgt::ConfigError("cannot open matrix file '" + path + "'");
    nlohmann::json j;
    in >> j;
    if (j.is_object() && j.contains("matrix")) j = j["matrix"];
    if (!j.is_array() || j.empty()) {
        throw qgt::ConfigError(path + ": expected a nested array [[ [re,im], ... ], ...]");
    }
    const auto n = static_cast<Eigen::Index>(j.size());
    qgt::Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw qgt::ConfigError(path + ": matrix must be square");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            const auto& cell = row.at(static_cast<std::size_t>(c));
            if (cell.is_number()) {
                m(r, c) = qgt::Complex(cell.get<double>(), 0.0);
            } else if (cell.is_array() && cell.size() == 2) {
                m(r, c) = qgt::Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
            } else {
                throw qgt::ConfigError(path + ": entries must be numbers or [re, im] pairs");
            }
        }
    }
    return m;
}

nlohmann::json matrix_to_json(const qgt::Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

struct ModelFlags {
    std::string name = "paramagnet";
    double omega0 = 1.0;
    double mu = 1.0;
    std::uint64_t model_seed = 1;
    Eigen::Index n = 2;
    Eigen::Index k = 2;
    std::optional<double> temperature;
    std::optional<double> beta;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", name, "paramagnet | twoband | random")
            ->check(CLI::IsMember(qgt::model_names()));
        cmd->add_option("--omega0", omega0, "Larmor frequency (paramagnet)");
        cmd->add_option("--mu", mu, "mass parameter (twoband)");
        cmd->add_option("--model-seed", model_seed, "seed of the random model");
        cmd->add_option("-N,--dim", n, "Hilbert-space dimension (random model)");
        cmd->add_option("-k,--params", k, "parameter count (random model)");
        auto* t = cmd->add_option("--temperature,-T",
                                  [this](const std::vector<std::string>& v) {
                                      temperature = qgt::parse_number(v.front());
                                      return true;
                                  },
                                  "temperature (thermal state)");
        cmd->add_option("--beta",
                        [this](const std::vector<std::string>& v) {
                            beta = qgt::parse_number(v.front());
                            return true;
                        },
                        "inverse temperature")
            ->excludes(t);
    }

    qgt::ParameterizedModel build() const {
        std::map<std::string, double> options;
        if (name == "paramagnet") options["omega0"] = omega0;
        if (name == "twoband") options["mu"] = mu;
        if (name == "random") {
            options["seed"] = static_cast<double>(model_seed);
            options["N"] = static_cast<double>(n);
            options["k"] = static_cast<double>(k);
        }
        std::optional<double> t = temperature;
        if (beta) t = 1.0 / *beta;
        return qgt::make_model(name, options, t);
    }
};

int run_scan_command(const std::string& config_path,
                     const std::vector<std::pair<std::string, std::string>>& overrides) {
    qgt::ScanConfig config = qgt::parse_config_file(config_path);
    for (const auto& [key, value] : overrides) {
        if (key == "model") {
            config.model_name = value;
        } else if (key == "quantity") {
            config.quantity = value;
        } else if (key == "out") {
            config.out_path = value;
        } else if (key == "format") {
            config.format = value;
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(qgt::parse_number(value));
        } else if (key == "threads") {
            config.threads = static_cast<unsigned>(qgt::parse_number(value));
        } else if (key == "fd-step") {
            config.plan.step = qgt::parse_number(value);
            config.plan_explicit = true;
        } else if (key == "fd-scheme") {
            if (value == "central-2") {
                config.plan.scheme = qgt::FdScheme::Central2;
            } else if (value == "central-4") {
                config.plan.scheme = qgt::FdScheme::Central4;
            } else {
                throw qgt::ConfigError("fd-scheme must be central-2 or central-4");
            }
            config.plan_explicit = true;
        } else if (key == "pin-timestamp") {
            config.pinned_timestamp = value;
        }
    }
    const qgt::ScanOutcome outcome = qgt::run_scan(config);
    qgt::write_outcome(outcome, config.out_path, config.format);
    if (!outcome.warnings.empty()) {
        std::cerr << outcome.warnings.size() << " of " << outcome.table.rows.size()
                  << " rows failed; see " << config.out_path << ".warnings\n";
        return kExitPartial;
    }
    std::cout << "wrote " << outcome.table.rows.size() << " rows to " << config.out_path << "\n";
    return kExitOk;
}

int run_verify_command(const std::string& suite, std::uint64_t seed) {
    const qgt::VerifyReport report = qgt::run_verify(suite, seed);
    for (const auto& c : report.checks) {
        std::printf("%-4s %-42s residual %-12.4g tolerance %-8.2g %s\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.residual, c.tolerance,
                    c.note.c_str());
    }
    std::printf("%zu checks, %s\n", report.checks.size(),
                report.all_pass() ? "all passed" : "FAILURES PRESENT");
    return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum geometric tensor toolkit: metrics, connections and distances for "
                 "pure and thermal states"};
    app.require_subcommand(1);

    // --- scan ---
    auto* scan = app.add_subcommand("scan", "run a grid/sweep scan from a config file");
    std::string config_path;
    scan->add_option("--config,-c", config_path, "declarative config file")->required();
    std::vector<std::pair<std::string, std::string>> overrides;
    for (const std::string key :
         {"model", "quantity", "out", "format", "seed", "threads", "fd-step", "fd-scheme",
          "pin-timestamp"}) {
        scan->add_option("--" + key,
                         [&overrides, key](const std::vector<std::string>& v) {
                             overrides.emplace_back(key, v.front());
                             return true;
                         },
                         "override config key '" + key + "'");
    }

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    std::string suite = "all";
    std::uint64_t verify_seed = 7;
    verify->add_option("--suite", suite, "all | pure | mixed | zoo")
        ->check(CLI::IsMember({"all", "pure", "mixed", "zoo"}));
    verify->add_option("--seed", verify_seed, "seed for the randomized checks");

    // --- distance ---
    auto* distance = app.add_subcommand("distance", "Bures/Sjoqvist distances between two states");
    ModelFlags dist_model;
    dist_model.attach(distance);
    std::string at_str, and_str, rho1_path, rho2_path;
    distance->add_option("--at", at_str, "first parameter point, e.g. 0.7,0.3");
    distance->add_option("--and", and_str, "second parameter point");
    distance->add_option("--rho1", rho1_path, "JSON file with an inline density matrix");
    distance->add_option("--rho2", rho2_path, "JSON file with an inline density matrix");

    // --- holonomy ---
    auto* holonomy = app.add_subcommand("holonomy", "Uhlmann holonomy around a loop");
    ModelFlags hol_model;
    hol_model.attach(holonomy);
    std::string hol_at, hol_kind = "sweep";
    Eigen::Index hol_coord = 1, hol_ci = 0, hol_cj = 1;
    double hol_from = 0.0, hol_to = 2.0 * M_PI, hol_radius = 0.5;
    std::size_t hol_count = 96;
    double hol_step = 1e-5;
    holonomy->add_option("--at", hol_at, "loop base point")->required();
    holonomy->add_option("--loop", hol_kind, "sweep | circle")
        ->check(CLI::IsMember({"sweep", "circle"}));
    holonomy->add_option("--coord", hol_coord, "swept coordinate (sweep)");
    holonomy->add_option("--from", [&hol_from](const std::vector<std::string>& v) {
        hol_from = qgt::parse_number(v.front());
        return true;
    }, "sweep start");
    holonomy->add_option("--to", [&hol_to](const std::vector<std::string>& v) {
        hol_to = qgt::parse_number(v.front());
        return true;
    }, "sweep end");
    holonomy->add_option("--coords", [&hol_ci, &hol_cj](const std::vector<std::string>& v) {
        const auto parts = split_csv(v.front());
        if (parts.size() != 2) throw CLI::ValidationError("--coords needs two indices");
        hol_ci = static_cast<Eigen::Index>(qgt::parse_number(parts[0]));
        hol_cj = static_cast<Eigen::Index>(qgt::parse_number(parts[1]));
        return true;
    }, "circle coordinate plane, e.g. 0,1");
    holonomy->add_option("--radius", hol_radius, "circle radius");
    holonomy->add_option("--count", hol_count, "loop segment count");
    holonomy->add_option("--fd-step", hol_step, "stencil step for the connection");

    CLI11_PARSE(app, argc, argv);

    try {
        if (scan->parsed()) return run_scan_command(config_path, overrides);
        if (verify->parsed()) return run_verify_command(suite, verify_seed);

        if (distance->parsed()) {
            std::optional<qgt::DensityMatrix> rho1, rho2;
            if (!rho1_path.empty() != !rho2_path.empty()) {
                throw qgt::ConfigError("provide both --rho1 and --rho2, or neither");
            }
            if (!rho1_path.empty()) {
                rho1.emplace(qgt::HermitianOperator(matrix_from_json_file(rho1_path)));
                rho2.emplace(qgt::HermitianOperator(matrix_from_json_file(rho2_path)));
            } else {
                if (at_str.empty() || and_str.empty()) {
                    throw qgt::ConfigError("distance needs --at and --and (or --rho1/--rho2)");
                }
                const qgt::ParameterizedModel model = dist_model.build();
                rho1.emplace(model.density_at(parse_point(at_str)));
                rho2.emplace(model.density_at(parse_point(and_str)));
            }
            nlohmann::json out;
            const double fidelity = qgt::uhlmann_fidelity(*rho1, *rho2);
            out["fidelity"] = fidelity;
            out["d_B2"] = qgt::bures_distance_squared(*rho1, *rho2);
            bool partial = false;
            try {
                out["d_S2"] = qgt::sjoqvist_distance_squared(*rho1, *rho2);
            } catch (const qgt::DegeneracyError& e) {
                out["d_S2"] = nullptr;
                out["warning"] = e.what();
                partial = true;
            }
            std::cout << out.dump(2) << "\n";
            return partial ? kExitPartial : kExitOk;
        }

        if (holonomy->parsed()) {
            const qgt::ParameterizedModel model = hol_model.build();
            const qgt::ParamPoint base = parse_point(hol_at);
            const qgt::ParamLoop loop =
                hol_kind == "sweep"
                    ? qgt::ParamLoop::coordinate_sweep(base, hol_coord, hol_from, hol_to,
                                                       hol_count)
                    : qgt::ParamLoop::circle(base, hol_ci, hol_cj, hol_radius, hol_count);
            const qgt::Matrix u =
                qgt::uhlmann_holonomy(model, loop, qgt::DifferentiationPlan::central2(hol_step));
            nlohmann::json out;
            out["holonomy"] = matrix_to_json(u);
            out["unitarity_residual"] = qgt::max_abs(
                qgt::Matrix(u.adjoint() * u - qgt::Matrix::Identity(u.rows(), u.cols())));
            std::cout << out.dump(2) << "\n";
            return kExitOk;
        }
    } catch (const qgt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    }
    return kExitOk;
}
