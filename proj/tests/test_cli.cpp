#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#ifndef FCMETRIC_CLI_PATH
#error "FCMETRIC_CLI_PATH must point at the built command-line binary"
#endif

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("fcmetric_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path write_config(const std::string& stem, const json& doc) {
    const fs::path path = scratch_dir() / (stem + ".json");
    std::ofstream out(path);
    out << doc.dump(2) << '\n';
    return path;
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_path = scratch_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    const fs::path err_path = scratch_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(FCMETRIC_CLI_PATH) + " " + args + " > " +
                            out_path.string() + " 2> " + err_path.string();
    const int raw = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

json interval_check_config() {
    return {{"family", "interval_m2"}, {"n_samples", 2000}, {"seed", 1}};
}

json naturals_check_config() {
    return {{"family", "naturals_r2"}, {"n_samples", 10000}, {"seed", 1}};
}

const json* find_check(const json& report, const std::string& id) {
    for (const auto& entry : report.at("checks")) {
        if (entry.at("id") == id) return &entry;
    }
    return nullptr;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("interval check: all checks pass, exit 0") {
    const auto config = write_config("interval_check", interval_check_config());
    const auto result = run_cli("check --config " + config.string() + " --json");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    CHECK(report.at("command") == "check");
    CHECK(report.at("passed") == true);
    CHECK(report.at("config_echo").at("family") == "interval_m2");
    // Six axioms + the extended refutation + five hypothesis checks.
    CHECK(report.at("checks").size() == 12);
    const json* suplim = find_check(report, "suplim_condition");
    REQUIRE(suplim != nullptr);
    CHECK(std::abs(suplim->at("computed_values").at("threshold").get<double>() - 8.0) <= 1e-12);
    CHECK(std::abs(suplim->at("computed_values").at("sup_limit").get<double>() - 5.0) <= 1e-9);
    // No extended witness on this space.
    const json* refute = find_check(report, "refute_extended");
    REQUIRE(refute != nullptr);
    CHECK(refute->at("computed_values").at("witness_found") == 0.0);
}

TEST_CASE("naturals check: honest failure with frozen witnesses, exit 1") {
    const auto config = write_config("naturals_check", naturals_check_config());
    const auto result = run_cli("check --config " + config.string() + " --json");
    CHECK(result.exit_code == 1);
    const json report = json::parse(result.out);
    CHECK(report.at("passed") == false);

    const json* triangle = find_check(report, "controlled_triangle");
    REQUIRE(triangle != nullptr);
    CHECK(triangle->at("passed") == false);
    CHECK(triangle->at("computed_values").at("n_violations") == 1);
    REQUIRE(triangle->at("witnesses").size() == 1);
    CHECK(triangle->at("witnesses")[0].at("sample_index") == 8930);
    CHECK(std::abs(triangle->at("witnesses")[0].at("margin").get<double>() - 2164.0) <= 1e-9);

    const json* admiss = find_check(report, "control_admissibility");
    REQUIRE(admiss != nullptr);
    CHECK(admiss->at("passed") == false);
    CHECK(admiss->at("computed_values").at("n_violations").get<std::int64_t>() > 0);

    const json* refute = find_check(report, "refute_extended");
    REQUIRE(refute != nullptr);
    CHECK(refute->at("passed") == true); // informational
    CHECK(refute->at("computed_values").at("witness_found") == 1.0);
    CHECK(refute->at("witnesses")[0].at("sample_index") == 23);
}

TEST_CASE("check subsets run only the named checks") {
    json config = naturals_check_config();
    config["checks"] = {"refute_extended"};
    const auto path = write_config("naturals_refute_only", config);
    const auto result = run_cli("check --config " + path.string() + " --json");
    CHECK(result.exit_code == 0); // refutation is informational
    const json report = json::parse(result.out);
    REQUIRE(report.at("checks").size() == 1);
    CHECK(report.at("checks")[0].at("id") == "refute_extended");
    CHECK(report.at("passed") == true);
}

TEST_CASE("config errors exit 2 before any run starts") {
    const auto unknown_family =
        write_config("bad_family", {{"family", "poset_q3"}});
    CHECK(run_cli("check --config " + unknown_family.string()).exit_code == 2);

    const auto unknown_key =
        write_config("bad_key", {{"family", "interval_m2"}, {"samples", 10}});
    CHECK(run_cli("check --config " + unknown_key.string()).exit_code == 2);

    const fs::path malformed = scratch_dir() / "malformed.json";
    std::ofstream(malformed) << "{ not json";
    CHECK(run_cli("check --config " + malformed.string()).exit_code == 2);

    CHECK(run_cli("check --config " + (scratch_dir() / "missing.json").string()).exit_code == 2);

    // Hypothesis checks need a contraction; the naturals family has none.
    json no_contraction = naturals_check_config();
    no_contraction["checks"] = {"contractive_inequality"};
    const auto path = write_config("naturals_hypothesis", no_contraction);
    const auto result = run_cli("check --config " + path.string());
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("config error") != std::string::npos);

    // Solve on a contraction-free family fails the same way.
    const auto nat = write_config("naturals_solve", naturals_check_config());
    CHECK(run_cli("solve --config " + nat.string()).exit_code == 2);
}

TEST_CASE("reports are byte-identical across runs and output channels") {
    const auto config = write_config("interval_repeat", interval_check_config());
    const fs::path out_file = scratch_dir() / "report_copy.json";
    const auto first =
        run_cli("check --config " + config.string() + " --json --out " + out_file.string());
    const auto second = run_cli("check --config " + config.string() + " --json");
    REQUIRE(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(slurp(out_file) == first.out);

    // The parallel run prints the same bytes.
    const auto parallel = run_cli("check --config " + config.string() + " --json --parallel");
    CHECK(parallel.out == first.out);
}

TEST_CASE("seed and sample overrides land in the config echo") {
    const auto config = write_config("interval_override", interval_check_config());
    const auto result =
        run_cli("check --config " + config.string() + " --json --seed 9 --samples 123");
    const json report = json::parse(result.out);
    CHECK(report.at("config_echo").at("seed") == 9);
    CHECK(report.at("config_echo").at("n_samples") == 123);
    for (const auto& entry : report.at("checks")) {
        if (entry.at("computed_values").contains("n_samples"))
            CHECK(entry.at("computed_values").at("n_samples") == 123);
    }
}

TEST_CASE("human output prints pass lines and an overall verdict") {
    const auto config = write_config("interval_human", interval_check_config());
    const auto result = run_cli("check --config " + config.string());
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.find("[PASS] order_chain") != std::string::npos);
    CHECK(result.out.find("overall: PASS") != std::string::npos);
    CHECK(result.out.find('{') == std::string::npos); // no JSON leaks into the summary
}

TEST_CASE("solve on the interval contraction: converged, bounded, unique") {
    const auto config = write_config(
        "interval_solve", {{"family", "interval_m2"}, {"n_samples", 2000}, {"seed", 1}});
    const auto result = run_cli("solve --config " + config.string() + " --json");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    CHECK(report.at("command") == "solve");
    CHECK(report.at("passed") == true);
    const json& solve = report.at("solve");
    CHECK(solve.at("converged") == true);
    CHECK(solve.at("iterations") == 12);
    CHECK(std::abs(solve.at("fixed_point")[0].get<double>()) <= 1e-9);
    CHECK(solve.at("residual").get<double>() <= 1e-9);
    CHECK(solve.at("bound_checks").size() == 36);
    for (const auto& bound : solve.at("bound_checks")) CHECK(bound.at("holds") == true);
    CHECK(solve.at("uniqueness").at("unique") == true);
}

TEST_CASE("solve --x0 override shortens the orbit") {
    const auto config = write_config(
        "interval_solve_x0", {{"family", "interval_m2"}, {"n_samples", 2000}});
    const auto result = run_cli("solve --config " + config.string() + " --json --x0 0.5");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    CHECK(report.at("config_echo").at("x0") == json::array({0.5}));
    CHECK(report.at("solve").at("iterations").get<int>() < 12);
}

TEST_CASE("failed hypotheses veto the solve unless forced") {
    // P = 0.9 keeps ||S||^2 = 0.81 < 1 (so the solve machinery stays sound)
    // but drops the sup-lim threshold to 1/0.81, far below the limit 5.
    json config = {{"family", "interval_m2"},
                   {"n_samples", 1000},
                   {"contraction", {{"P", {{"scalar", 0.9}}}}}};
    const auto path = write_config("interval_bad_p", config);

    const auto vetoed = run_cli("solve --config " + path.string() + " --json");
    CHECK(vetoed.exit_code == 1);
    const json vetoed_report = json::parse(vetoed.out);
    CHECK(vetoed_report.at("passed") == false);
    CHECK(vetoed_report.at("solve").is_null());
    const json* suplim = find_check(vetoed_report, "suplim_condition");
    REQUIRE(suplim != nullptr);
    CHECK(suplim->at("passed") == false);

    const auto forced = run_cli("solve --config " + path.string() + " --json --force");
    CHECK(forced.exit_code == 1); // hypotheses still fail, so the run fails
    const json forced_report = json::parse(forced.out);
    REQUIRE(!forced_report.at("solve").is_null());
    CHECK(forced_report.at("solve").at("converged") == true);
    CHECK(forced_report.at("passed") == false);

    // A genuinely non-contracting coefficient aborts the forced solve at the
    // bound check stage: the run fails (exit 1) rather than reporting.
    json fatal = config;
    fatal["contraction"]["P"]["scalar"] = 1.0;
    const auto fatal_path = write_config("interval_fatal_p", fatal);
    const auto aborted = run_cli("solve --config " + fatal_path.string() + " --json --force");
    CHECK(aborted.exit_code == 1);
    CHECK(aborted.err.find("run failed") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("check").exit_code == 2);               // missing --config
    CHECK(run_cli("frobnicate").exit_code == 2);          // unknown subcommand
    const auto config = write_config("interval_usage", interval_check_config());
    CHECK(run_cli("check --config " + config.string() + " --samples 0").exit_code == 2);
}

} // TEST_SUITE("cli")
