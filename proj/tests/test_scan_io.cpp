#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qgt/models.hpp"
#include "qgt/scan.hpp"
#include "qgt/table.hpp"
#include "qgt/verify.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace qgt;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t column_index(const ResultTable& table, const std::string& name) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (table.columns[i] == name) return i;
    }
    FAIL("missing column ", name);
    return 0;
}

}  // namespace

TEST_CASE("format_double: shortest round-trip decimals and nan") {
    for (const double v : {0.1, 1.0 / 3.0, 2.5e-300, -7.25, 3.141592653589793}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(0.25) == "0.25");
}

TEST_CASE("to_csv: shape, metadata comments, quoting, nan literal") {
    ResultTable t;
    t.columns = {"a", "b,comma", "c"};
    t.rows = {{1.0, 2.0, 3.0}, {4.5, std::nan(""), -1e-3}};
    t.metadata = {{"tool", "qgt"}, {"quantity", "demo"}};
    const std::string csv = to_csv(t);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# quantity: demo");
    std::getline(lines, line);
    CHECK(line == "# tool: qgt");
    std::getline(lines, line);
    CHECK(line == "a,\"b,comma\",c");
    std::getline(lines, line);
    CHECK(line == "1,2,3");
    std::getline(lines, line);
    CHECK(line == "4.5,nan,-0.001");
    CHECK_FALSE(std::getline(lines, line));

    ResultTable ragged = t;
    ragged.rows.push_back({1.0});
    CHECK_THROWS_AS(to_csv(ragged), std::invalid_argument);
}

TEST_CASE("JSON round trip preserves the table, with nan as null") {
    ResultTable t;
    t.columns = {"x", "y"};
    t.rows = {{0.5, std::nan("")}, {-2.0, 1e-9}};
    t.metadata = {{"seed", "7"}};
    const std::string json = to_json(t);
    CHECK(json.find("null") != std::string::npos);
    const ResultTable back = table_from_json(json);
    CHECK(back.columns == t.columns);
    CHECK(back.metadata == t.metadata);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[0][0] == 0.5);
    CHECK(std::isnan(back.rows[0][1]));
    CHECK(back.rows[1][1] == 1e-9);
}

TEST_CASE("parse_number: pi forms and failures") {
    CHECK(parse_number("pi") == doctest::Approx(M_PI));
    CHECK(parse_number("-pi") == doctest::Approx(-M_PI));
    CHECK(parse_number("2pi") == doctest::Approx(2.0 * M_PI));
    CHECK(parse_number("1.2pi") == doctest::Approx(1.2 * M_PI));
    CHECK(parse_number("0.25") == 0.25);
    CHECK(parse_number(" -3e-2 ") == -0.03);
    CHECK_THROWS_AS(parse_number("abc"), ConfigError);
    CHECK_THROWS_AS(parse_number(""), ConfigError);
}

TEST_CASE("config parsing and validation") {
    const std::string text = R"(
# Fig. 1 style scan
model = paramagnet
omega0 = 1.0
quantity = bures-metric
grid.T = 0.01 : 5 : 25
at = 0.25pi, 0.3
seed = 7
out = fig1.csv
format = csv
)";
    const ScanConfig config = parse_config_text(text);
    CHECK(config.model_name == "paramagnet");
    CHECK(config.grid.size() == 1);
    CHECK(config.grid[0].param == "T");
    CHECK(config.at->size() == 2);
    CHECK_NOTHROW(config.validate());

    CHECK_THROWS_AS(parse_config_text("bogus-key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("model\n"), ConfigError);

    // 1-point grids are rejected at validation.
    ScanConfig one_point = config;
    one_point.grid[0].count = 1;
    CHECK_THROWS_AS(one_point.validate(), ConfigError);

    // Mixed quantities need a temperature from somewhere.
    ScanConfig no_temp = config;
    no_temp.grid[0].param = "theta";
    no_temp.grid[0].min = 0.1;
    no_temp.grid[0].max = 3.0;
    CHECK_THROWS_AS(no_temp.validate(), ConfigError);

    // Unknown grid axes are rejected.
    ScanConfig bad_axis = config;
    bad_axis.grid[0].param = "qx";
    CHECK_THROWS_AS(bad_axis.validate(), ConfigError);

    ScanConfig no_out = config;
    no_out.out_path.clear();
    CHECK_THROWS_AS(no_out.validate(), ConfigError);
}

TEST_CASE("run_scan: paramagnet temperature sweep matches the closed form") {
    const std::string text = R"(
model = paramagnet
quantity = bures-metric
grid.T = 0.01 : 5 : 25
at = 0.25pi, 0.3
out = unused.csv
)";
    const ScanConfig config = parse_config_text(text);
    const ScanOutcome outcome = run_scan(config);
    CHECK(outcome.warnings.empty());
    const auto& table = outcome.table;
    const std::size_t ct = column_index(table, "T");
    const std::size_t c00 = column_index(table, "g_B[0][0]");
    const std::size_t c11 = column_index(table, "g_B[1][1]");
    const std::size_t c01 = column_index(table, "g_B[0][1]");
    REQUIRE(table.rows.size() == 25);
    for (const auto& row : table.rows) {
        const MetricTensor want = paramagnet_bures_closed_form(M_PI / 4.0, row[ct], 1.0);
        CHECK(std::abs(row[c00] - want(0, 0)) < 1e-8);
        CHECK(std::abs(row[c11] - want(1, 1)) < 1e-8);
        CHECK(std::abs(row[c01]) < 1e-8);
    }
}

TEST_CASE("run_scan: two-band BZ grid has vanishing g_xy along sin(kx) = 0 lines") {
    const std::string text = R"(
model = twoband
mu = 1.0
temperature = 0.1
quantity = bures-metric
grid.kx = -pi : pi : 8 : exclusive
grid.ky = -pi : pi : 8 : exclusive
out = unused.csv
)";
    const ScanOutcome outcome = run_scan(parse_config_text(text));
    CHECK(outcome.warnings.empty());
    const auto& table = outcome.table;
    REQUIRE(table.rows.size() == 64);
    const std::size_t cx = column_index(table, "kx");
    const std::size_t cxy = column_index(table, "g_B[0][1]");
    std::size_t hits = 0;
    for (const auto& row : table.rows) {
        if (std::abs(std::sin(row[cx])) < 1e-12) {  // kx = -pi and kx = 0 grid lines
            CHECK(std::abs(row[cxy]) < 1e-10);
            ++hits;
        }
    }
    CHECK(hits == 16);
}

TEST_CASE("run_scan: determinism across runs and thread counts") {
    const std::string text = R"(
model = twoband
temperature = 0.5
quantity = bures-metric
grid.kx = -pi : pi : 5 : exclusive
grid.ky = -pi : pi : 5 : exclusive
seed = 11
out = unused.csv
)";
    ScanConfig config = parse_config_text(text);
    config.pinned_timestamp = "2026-01-01T00:00:00Z";
    config.threads = 1;
    const std::string csv1 = to_csv(run_scan(config).table);
    const std::string csv2 = to_csv(run_scan(config).table);
    CHECK(csv1 == csv2);
    config.threads = 3;
    const std::string csv3 = to_csv(run_scan(config).table);
    CHECK(csv1 == csv3);
}

TEST_CASE("run_scan: per-row failures become nan rows plus warnings, sidecar on disk") {
    // T = 1e-3 underflows the excited Gibbs weight: rank error in that row only.
    const std::string text = R"(
model = paramagnet
quantity = bures-metric
grid.T = 0.001 : 1 : 4
at = 0.25pi, 0
out = unused.csv
)";
    const ScanOutcome outcome = run_scan(parse_config_text(text));
    REQUIRE(outcome.table.rows.size() == 4);
    CHECK(outcome.warnings.size() == 1);
    CHECK(outcome.warnings[0].find("row 0") != std::string::npos);
    CHECK(std::isnan(outcome.table.rows[0][1]));
    CHECK(outcome.table.rows[0][0] == doctest::Approx(0.001));  // coordinate kept readable
    CHECK_FALSE(std::isnan(outcome.table.rows[1][1]));

    const auto dir = std::filesystem::temp_directory_path() / "qgt_scan_test";
    std::filesystem::create_directories(dir);
    const std::string out = (dir / "partial.csv").string();
    write_outcome(outcome, out, "csv");
    CHECK(std::filesystem::exists(out));
    CHECK(std::filesystem::exists(out + ".warnings"));
    CHECK(slurp(out + ".warnings").find("rank-deficient") != std::string::npos);
    CHECK(slurp(out).find("nan") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("run_scan: loop quantities produce a single row") {
    const std::string berry = R"(
model = paramagnet
quantity = berry-phase
loop = sweep
loop.coord = 1
loop.from = 0
loop.to = 2pi
loop.count = 500
at = 0.5pi, 0
out = unused.csv
)";
    const ScanOutcome bp = run_scan(parse_config_text(berry));
    REQUIRE(bp.table.rows.size() == 1);
    // Equator loop: phase pi(1 - cos(pi/2)) = pi, i.e. |phase| = pi mod 2pi.
    CHECK(std::abs(std::abs(bp.table.rows[0][0]) - M_PI) < 1e-3);

    const std::string hol = R"(
model = paramagnet
temperature = 0.5
quantity = holonomy
loop = sweep
loop.coord = 1
loop.from = 0
loop.to = 2pi
loop.count = 64
at = 1.0, 0
out = unused.csv
)";
    const ScanOutcome ho = run_scan(parse_config_text(hol));
    REQUIRE(ho.table.rows.size() == 1);
    const std::size_t cres = column_index(ho.table, "unitarity_residual");
    CHECK(ho.table.rows[0][cres] < 1e-8);
}

TEST_CASE("run_scan: t-sweep emits Bures and Fubini-Study columns") {
    const std::string text = R"(
model = twoband
mu = 1.0
quantity = t-sweep
at = 0.2pi, -0.4pi
beta-grid = 1 : 200 : 6 : log
out = unused.csv
)";
    const ScanOutcome outcome = run_scan(parse_config_text(text));
    CHECK(outcome.warnings.empty());
    const auto& table = outcome.table;
    REQUIRE(table.rows.size() == 6);
    const std::size_t cdiff = column_index(table, "max_abs_diff");
    CHECK(table.rows.front()[cdiff] > table.rows.back()[cdiff]);
    CHECK(table.rows.back()[cdiff] < 1e-4);
}

TEST_CASE("run_verify: suite selection and the uhlmann-equals-bures line") {
    const VerifyReport mixed = run_verify("mixed", 7);
    bool found = false;
    for (const auto& c : mixed.checks) {
        if (c.name == "mixed/uhlmann-equals-bures") {
            found = true;
            CHECK(c.pass);
            CHECK(c.residual < 1e-8);
        }
    }
    CHECK(found);
    CHECK(mixed.all_pass());

    const VerifyReport zoo = run_verify("zoo", 7);
    CHECK(zoo.all_pass());
    for (const auto& c : zoo.checks) CHECK(c.name.rfind("zoo/", 0) == 0);

    CHECK_THROWS_AS(run_verify("bogus", 1), std::invalid_argument);
}

TEST_CASE("emit writes files and rejects unknown formats") {
    ResultTable t;
    t.columns = {"x"};
    t.rows = {{1.0}};
    const auto dir = std::filesystem::temp_directory_path() / "qgt_emit_test";
    std::filesystem::create_directories(dir);
    const std::string base = (dir / "t").string();
    emit(t, base + ".csv", "csv");
    emit(t, base + ".json", "json");
    CHECK(slurp(base + ".csv").find("x\n1\n") != std::string::npos);
    CHECK(table_from_json(slurp(base + ".json")).rows[0][0] == 1.0);
    CHECK_THROWS_AS(emit(t, base + ".xml", "xml"), std::invalid_argument);
    std::filesystem::remove_all(dir);
}
