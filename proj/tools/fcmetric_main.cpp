// Command-line front end: loads a space/contraction configuration, runs the
// selected axiom and hypothesis checks or the Picard solver, prints a human
// summary, and emits a machine-readable JSON report.
//
// Exit codes: 0 all executed checks passed; 1 at least one check failed or
// the solve did not converge; 2 the run never started (usage/config error).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fcmetric/contraction.hpp"
#include "fcmetric/errors.hpp"
#include "fcmetric/examples.hpp"
#include "fcmetric/report_json.hpp"
#include "fcmetric/rng.hpp"
#include "fcmetric/solver.hpp"
#include "fcmetric/space.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
    fcm::ExampleConfig example;
    std::optional<json> contraction_json;
    std::vector<std::string> checks; // empty = all applicable
    std::int64_t n_samples = 10000;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    int m_max = 64;
    int i_max = 64;
    int max_iter = 10000;
    std::optional<fcm::Point> x0;
    std::optional<std::vector<fcm::Point>> starts;
};

const std::vector<std::string> kAxiomChecks = {
    "identity_of_indiscernibles", "order_chain",        "controlled_triangle",
    "symmetry",                   "zero_implies_equal", "control_admissibility",
};
const std::vector<std::string> kHypothesisChecks = {
    "contractive_inequality", "coefficient_norms", "suplim_condition",
    "control_limits",         "map_closure",
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fcm::ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw fcm::ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
}

fcm::Point parse_point(const json& j, const std::string& field) {
    if (j.is_number()) return fcm::Point{j.get<double>()};
    if (j.is_array() && !j.empty()) {
        fcm::Point p;
        for (const auto& c : j) {
            if (!c.is_number())
                throw fcm::ConfigError("field '" + field + "' must hold numeric coordinates");
            p.push_back(c.get<double>());
        }
        return p;
    }
    throw fcm::ConfigError("field '" + field + "' must be a number or a coordinate array");
}

RunConfig parse_run_config(const json& doc) {
    static const std::vector<std::string> known = {
        "family", "family_params", "contraction", "checks",   "n_samples", "seed",
        "tol",    "m_max",         "i_max",       "max_iter", "x0",        "starts",
    };
    if (!doc.is_object()) throw fcm::ConfigError("config root must be a JSON object");
    for (const auto& item : doc.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end())
            throw fcm::ConfigError("unknown config field '" + item.key() + "'");
    }
    if (!doc.contains("family") || !doc["family"].is_string())
        throw fcm::ConfigError("config needs a string field 'family'");

    RunConfig cfg;
    cfg.example.family = doc["family"].get<std::string>();
    if (doc.contains("family_params")) {
        const json& fp = doc["family_params"];
        if (!fp.is_object()) throw fcm::ConfigError("'family_params' must be an object");
        for (const auto& item : fp.items()) {
            if (item.key() == "n_cap") cfg.example.n_cap = item.value().get<int>();
            else if (item.key() == "grid_step") cfg.example.grid_step = item.value().get<double>();
            else throw fcm::ConfigError("unknown family parameter '" + item.key() + "'");
        }
    }
    if (doc.contains("contraction")) {
        if (!doc["contraction"].is_object())
            throw fcm::ConfigError("'contraction' must be an object");
        cfg.contraction_json = doc["contraction"];
    }
    if (doc.contains("checks")) {
        if (!doc["checks"].is_array()) throw fcm::ConfigError("'checks' must be an array");
        for (const auto& c : doc["checks"]) {
            if (!c.is_string()) throw fcm::ConfigError("'checks' entries must be strings");
            cfg.checks.push_back(c.get<std::string>());
        }
    }
    if (doc.contains("n_samples")) cfg.n_samples = doc["n_samples"].get<std::int64_t>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("tol")) cfg.tol = doc["tol"].get<double>();
    if (doc.contains("m_max")) cfg.m_max = doc["m_max"].get<int>();
    if (doc.contains("i_max")) cfg.i_max = doc["i_max"].get<int>();
    if (doc.contains("max_iter")) cfg.max_iter = doc["max_iter"].get<int>();
    if (doc.contains("x0")) cfg.x0 = parse_point(doc["x0"], "x0");
    if (doc.contains("starts")) {
        if (!doc["starts"].is_array()) throw fcm::ConfigError("'starts' must be an array");
        std::vector<fcm::Point> starts;
        for (const auto& s : doc["starts"]) starts.push_back(parse_point(s, "starts"));
        if (starts.empty()) throw fcm::ConfigError("'starts' must not be empty");
        cfg.starts = std::move(starts);
    }
    if (!(cfg.tol > 0.0)) throw fcm::ConfigError("'tol' must be positive");
    if (cfg.n_samples < 1) throw fcm::ConfigError("'n_samples' must be >= 1");
    if (cfg.m_max < 1 || cfg.i_max < 1 || cfg.max_iter < 1)
        throw fcm::ConfigError("'m_max', 'i_max', 'max_iter' must be >= 1");
    return cfg;
}

fcm::AlgebraElement parse_coefficient(const json& j, const fcm::AlgebraDescriptor& desc,
                                      const std::string& field) {
    if (!j.is_object())
        throw fcm::ConfigError("coefficient '" + field +
                               "' must be an object with 'scalar', 'diag', or 'full'");
    try {
        if (j.contains("scalar"))
            return fcm::AlgebraElement::scalar(desc, j["scalar"].get<double>());
        if (j.contains("diag")) {
            const auto values = j["diag"].get<std::vector<double>>();
            if (static_cast<int>(values.size()) != desc.dim)
                throw fcm::ConfigError("coefficient '" + field + "' diag needs " +
                                       std::to_string(desc.dim) + " entries");
            return fcm::AlgebraElement::diagonal(desc, values);
        }
        if (j.contains("full")) {
            if (desc.kind != fcm::AlgebraKind::matrix)
                throw fcm::ConfigError("coefficient '" + field +
                                       "' supports 'full' only for matrix algebras");
            auto values = j["full"].get<std::vector<double>>();
            return fcm::AlgebraElement(desc, std::move(values));
        }
    } catch (const std::invalid_argument& e) {
        throw fcm::ConfigError("coefficient '" + field + "': " + e.what());
    } catch (const json::exception& e) {
        throw fcm::ConfigError("coefficient '" + field + "': " + e.what());
    }
    throw fcm::ConfigError("coefficient '" + field + "' needs 'scalar', 'diag', or 'full'");
}

std::optional<fcm::ContractionSpec> resolve_contraction(
    const fcm::SpaceInstance& space, const std::optional<fcm::ContractionSpec>& builtin,
    const std::optional<json>& cj) {
    if (!cj) return builtin;
    const json& j = *cj;
    for (const auto& item : j.items()) {
        static const std::vector<std::string> known = {"map", "factor", "P", "Q", "R"};
        if (std::find(known.begin(), known.end(), item.key()) == known.end())
            throw fcm::ConfigError("unknown contraction field '" + item.key() + "'");
    }

    fcm::ContractionSpec spec;
    if (builtin) {
        spec = *builtin;
    } else {
        spec.P = fcm::AlgebraElement::zero(space.algebra);
        spec.Q = fcm::AlgebraElement::zero(space.algebra);
        spec.R = fcm::AlgebraElement::zero(space.algebra);
    }
    if (j.contains("map")) {
        const auto name = j["map"].get<std::string>();
        if (name != "scale")
            throw fcm::ConfigError("unknown contraction map '" + name + "' (known: scale)");
        if (!j.contains("factor"))
            throw fcm::ConfigError("contraction map 'scale' needs a numeric 'factor'");
        const double factor = j["factor"].get<double>();
        std::ostringstream name_out;
        name_out << "T(x) = " << factor << " * x";
        spec.name = name_out.str();
        spec.map = [factor](const fcm::Point& x) {
            fcm::Point y = x;
            for (double& c : y) c *= factor;
            return y;
        };
    } else if (j.contains("factor")) {
        throw fcm::ConfigError("contraction 'factor' is only meaningful with map 'scale'");
    } else if (!spec.map) {
        throw fcm::ConfigError("family '" + space.name +
                               "' has no built-in contraction; the config must name a map");
    }
    if (j.contains("P")) spec.P = parse_coefficient(j["P"], space.algebra, "P");
    if (j.contains("Q")) spec.Q = parse_coefficient(j["Q"], space.algebra, "Q");
    if (j.contains("R")) spec.R = parse_coefficient(j["R"], space.algebra, "R");
    return spec;
}

std::vector<std::string> expand_checks(const RunConfig& cfg, bool has_contraction) {
    std::vector<std::string> all = kAxiomChecks;
    all.push_back("refute_extended");
    if (has_contraction)
        all.insert(all.end(), kHypothesisChecks.begin(), kHypothesisChecks.end());
    if (cfg.checks.empty()) return all;

    std::vector<std::string> expanded;
    for (const std::string& c : cfg.checks) {
        if (c == "all") {
            expanded.insert(expanded.end(), all.begin(), all.end());
            continue;
        }
        const bool axiom = std::find(kAxiomChecks.begin(), kAxiomChecks.end(), c) !=
                           kAxiomChecks.end();
        const bool hypothesis = std::find(kHypothesisChecks.begin(), kHypothesisChecks.end(),
                                          c) != kHypothesisChecks.end();
        if (!axiom && !hypothesis && c != "refute_extended")
            throw fcm::ConfigError("unknown check name '" + c + "'");
        if (hypothesis && !has_contraction)
            throw fcm::ConfigError("check '" + c + "' needs a contraction in the config");
        expanded.push_back(c);
    }
    return expanded;
}

fcm::AxiomId axiom_id_from_name(const std::string& name) {
    using fcm::AxiomId;
    if (name == "identity_of_indiscernibles") return AxiomId::identity_of_indiscernibles;
    if (name == "order_chain") return AxiomId::order_chain;
    if (name == "controlled_triangle") return AxiomId::controlled_triangle;
    if (name == "symmetry") return AxiomId::symmetry;
    if (name == "zero_implies_equal") return AxiomId::zero_implies_equal;
    if (name == "control_admissibility") return AxiomId::control_admissibility;
    throw fcm::ConfigError("unknown axiom name '" + name + "'");
}

json point_json(const fcm::Point& p) { return json(p); }

json config_echo(const RunConfig& cfg, const std::vector<std::string>& checks,
                 const std::optional<fcm::ContractionSpec>& contraction,
                 const fcm::Point& x0, const std::vector<fcm::Point>& starts) {
    json starts_json = json::array();
    for (const auto& s : starts) starts_json.push_back(point_json(s));
    return {
        {"family", cfg.example.family},
        {"family_params",
         {{"n_cap", cfg.example.n_cap}, {"grid_step", cfg.example.grid_step}}},
        {"contraction", contraction ? json(contraction->name) : json(nullptr)},
        {"checks", checks},
        {"n_samples", cfg.n_samples},
        {"seed", cfg.seed},
        {"tol", cfg.tol},
        {"m_max", cfg.m_max},
        {"i_max", cfg.i_max},
        {"max_iter", cfg.max_iter},
        {"x0", point_json(x0)},
        {"starts", std::move(starts_json)},
    };
}

// One uniform entry shape for the "checks" array of the report.
json check_entry(const std::string& id, bool passed, json computed_values,
                 const std::vector<fcm::Witness>& witnesses) {
    json ws = json::array();
    for (const auto& w : witnesses) ws.push_back(fcm::to_json(w));
    return {
        {"id", id},
        {"passed", passed},
        {"computed_values", std::move(computed_values)},
        {"witnesses", std::move(ws)},
    };
}

json axiom_entry(const fcm::AxiomReport& report) {
    return check_entry(fcm::axiom_name(report.axiom), report.passed(),
                       {{"n_samples", report.n_samples}, {"n_violations", report.n_violations}},
                       report.witnesses);
}

json hypothesis_entry(const fcm::HypothesisReport& report) {
    json values = json::object();
    for (const auto& nv : report.computed_values) values[nv.name] = nv.value;
    return check_entry(fcm::condition_name(report.condition), report.passed, std::move(values),
                       report.witnesses);
}

std::vector<fcm::Point> control_limit_probes(const fcm::SpaceInstance& space,
                                             const fcm::Point& x0, std::uint64_t seed) {
    // The condition quantifies over every point of X; probe the start plus a
    // few deterministic samples.
    std::vector<fcm::Point> probes{x0};
    for (int j = 0; j < 3; ++j) probes.push_back(space.sample(fcm::derive_key(seed, j, 17)));
    return probes;
}

void emit_reports(const json& report, bool as_json, const std::string& out_path,
                  const std::string& human_summary) {
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw fcm::ConfigError("cannot open output path: " + out_path);
        out << report.dump(2) << '\n';
    }
    if (as_json)
        std::cout << report.dump(2) << '\n';
    else
        std::cout << human_summary;
}

std::string witness_preview(const fcm::Witness& w) {
    std::ostringstream out;
    out << "witness at sample " << w.sample_index << ", points";
    for (const auto& p : w.points) {
        out << " (";
        for (std::size_t c = 0; c < p.size(); ++c) out << (c ? "," : "") << p[c];
        out << ")";
    }
    out << ", margin " << w.margin << " [" << w.detail << "]";
    return out.str();
}

int run_check(const RunConfig& cfg, fcm::ExecutionPolicy policy, bool as_json,
              const std::string& out_path) {
    fcm::ExampleBundle bundle = fcm::build_example(cfg.example);
    const fcm::SpaceInstance& space = bundle.space;
    const std::optional<fcm::ContractionSpec> contraction =
        resolve_contraction(space, bundle.contraction, cfg.contraction_json);
    const std::vector<std::string> checks = expand_checks(cfg, contraction.has_value());
    const fcm::Point x0 = cfg.x0 ? *cfg.x0 : space.domain_hi;
    const std::vector<fcm::Point> starts =
        cfg.starts ? *cfg.starts : std::vector<fcm::Point>{space.domain_lo, space.domain_hi};

    fcm::CheckParams params;
    params.n_samples = cfg.n_samples;
    params.seed = cfg.seed;
    params.policy = policy;
    params.tol = cfg.tol;
    const fcm::LimitParams limits{cfg.i_max, cfg.m_max, 5, cfg.tol};

    json entries = json::array();
    std::ostringstream human;
    human << "space " << space.name << " ("
          << (space.algebra.kind == fcm::AlgebraKind::matrix ? "matrix" : "componentwise")
          << " algebra, dim " << space.algebra.dim << "), seed " << cfg.seed << ", samples "
          << cfg.n_samples << ", tol " << cfg.tol << "\n";
    bool all_passed = true;

    for (const std::string& id : checks) {
        if (std::find(kAxiomChecks.begin(), kAxiomChecks.end(), id) != kAxiomChecks.end()) {
            fcm::AxiomReport report = fcm::check_axiom(space, axiom_id_from_name(id), params);
            all_passed = all_passed && report.passed();
            entries.push_back(axiom_entry(report));
            human << (report.passed() ? "[PASS] " : "[FAIL] ") << id << "  violations "
                  << report.n_violations << "/" << report.n_samples << "\n";
            if (!report.witnesses.empty())
                human << "       " << witness_preview(report.witnesses.front()) << "\n";
        } else if (id == "refute_extended") {
            std::optional<fcm::Witness> w = fcm::refute_extended(space, params);
            entries.push_back(check_entry(
                "refute_extended", true, {{"witness_found", w.has_value() ? 1.0 : 0.0}},
                w ? std::vector<fcm::Witness>{*w} : std::vector<fcm::Witness>{}));
            human << "[INFO] refute_extended  "
                  << (w ? "extended inequality refuted" : "no witness in sampled tuples")
                  << "\n";
            if (w) human << "       " << witness_preview(*w) << "\n";
        } else {
            fcm::HypothesisReport report;
            if (id == "contractive_inequality")
                report = fcm::verify_contraction_inequality(space, *contraction, params);
            else if (id == "coefficient_norms")
                report = fcm::verify_coefficient_norms(*contraction);
            else if (id == "suplim_condition")
                report = fcm::verify_suplim(space, *contraction, x0, limits);
            else if (id == "control_limits")
                report = fcm::verify_control_limits(
                    space, *contraction, x0, control_limit_probes(space, x0, cfg.seed), limits);
            else if (id == "map_closure")
                report = fcm::validate_map_closure(space, *contraction, params);
            else
                throw fcm::ConfigError("unknown check name '" + id + "'");
            all_passed = all_passed && report.passed;
            entries.push_back(hypothesis_entry(report));
            human << (report.passed ? "[PASS] " : "[FAIL] ") << id;
            for (const auto& nv : report.computed_values)
                human << "  " << nv.name << " " << nv.value;
            human << "\n";
            if (!report.witnesses.empty())
                human << "       " << witness_preview(report.witnesses.front()) << "\n";
        }
    }
    human << "overall: " << (all_passed ? "PASS" : "FAIL") << "\n";

    json report = {
        {"command", "check"},
        {"config_echo", config_echo(cfg, checks, contraction, x0, starts)},
        {"checks", std::move(entries)},
        {"passed", all_passed},
    };
    emit_reports(report, as_json, out_path, human.str());
    return all_passed ? 0 : 1;
}

int run_solve(const RunConfig& cfg, fcm::ExecutionPolicy policy, bool as_json,
              const std::string& out_path, bool force) {
    fcm::ExampleBundle bundle = fcm::build_example(cfg.example);
    const fcm::SpaceInstance& space = bundle.space;
    const std::optional<fcm::ContractionSpec> contraction =
        resolve_contraction(space, bundle.contraction, cfg.contraction_json);
    if (!contraction)
        throw fcm::ConfigError("solve needs a contraction (family default or config)");
    const fcm::Point x0 = cfg.x0 ? *cfg.x0 : space.domain_hi;
    std::vector<fcm::Point> starts;
    if (cfg.starts) {
        starts = *cfg.starts;
    } else {
        starts = {space.domain_lo, space.domain_hi};
        if (space.point_dim == 1)
            starts.push_back({0.5 * (space.domain_lo[0] + space.domain_hi[0])});
    }

    fcm::CheckParams params;
    params.n_samples = cfg.n_samples;
    params.seed = cfg.seed;
    params.policy = policy;
    params.tol = cfg.tol;
    const fcm::LimitParams limits{cfg.i_max, cfg.m_max, 5, cfg.tol};

    std::ostringstream human;
    human << "space " << space.name << ", contraction " << contraction->name << ", x0";
    for (double c : x0) human << " " << c;
    human << ", tol " << cfg.tol << "\n";

    // Hypotheses first; the solve only runs when they hold (or under --force).
    std::vector<fcm::HypothesisReport> hypotheses;
    hypotheses.push_back(fcm::verify_coefficient_norms(*contraction));
    hypotheses.push_back(fcm::verify_contraction_inequality(space, *contraction, params));
    hypotheses.push_back(fcm::verify_suplim(space, *contraction, x0, limits));
    hypotheses.push_back(fcm::verify_control_limits(
        space, *contraction, x0, control_limit_probes(space, x0, cfg.seed), limits));

    json entries = json::array();
    bool hypotheses_passed = true;
    for (const auto& report : hypotheses) {
        hypotheses_passed = hypotheses_passed && report.passed;
        entries.push_back(hypothesis_entry(report));
        human << (report.passed ? "[PASS] " : "[FAIL] ") << condition_name(report.condition);
        for (const auto& nv : report.computed_values)
            human << "  " << nv.name << " " << nv.value;
        human << "\n";
    }

    json solve_json;
    bool solve_passed = false;
    if (!hypotheses_passed && !force) {
        human << "hypotheses failed; solve not attempted (use --force to override)\n";
        solve_json = nullptr;
    } else {
        fcm::FixedPointReport fixed = fcm::picard(space, *contraction, x0, cfg.tol, cfg.max_iter);
        fcm::UniquenessReport uniqueness =
            fcm::uniqueness_probe(space, *contraction, starts, cfg.tol, cfg.max_iter);
        json bounds = json::array();
        bool bounds_hold = true;
        for (int n = 1; n <= 6; ++n) {
            for (int q = 1; q <= 6; ++q) {
                fcm::BoundCheckReport bound =
                    fcm::cauchy_bound_check(space, *contraction, x0, n, q, cfg.tol);
                bounds_hold = bounds_hold && bound.holds;
                bounds.push_back(fcm::to_json(bound));
            }
        }
        solve_passed = fixed.converged && uniqueness.unique && bounds_hold;
        solve_json = {
            {"converged", fixed.converged},
            {"iterations", fixed.iterations},
            {"fixed_point", point_json(fixed.fixed_point)},
            {"residual", fixed.residual_norm},
            {"orbit_distances", fixed.orbit_distances},
            {"bound_checks", std::move(bounds)},
            {"uniqueness", fcm::to_json(uniqueness)},
        };
        human << (fixed.converged ? "[PASS] " : "[FAIL] ") << "picard  iterations "
              << fixed.iterations << "  residual " << fixed.residual_norm << "  fixed point";
        for (double c : fixed.fixed_point) human << " " << c;
        human << "\n";
        human << (uniqueness.unique ? "[PASS] " : "[FAIL] ") << "uniqueness  spread "
              << uniqueness.spread << " over " << uniqueness.runs.size() << " starts\n";
        human << (bounds_hold ? "[PASS] " : "[FAIL] ")
              << "cauchy_bounds  36 pairs (n, q) in {1..6}^2\n";
    }

    const bool all_passed = hypotheses_passed && solve_passed;
    human << "overall: " << (all_passed ? "PASS" : "FAIL") << "\n";
    json report = {
        {"command", "solve"},
        {"config_echo", config_echo(cfg, {}, contraction, x0, starts)},
        {"checks", std::move(entries)},
        {"solve", std::move(solve_json)},
        {"passed", all_passed},
    };
    emit_reports(report, as_json, out_path, human.str());
    return all_passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Axiom and fixed-point verification for operator-valued controlled metrics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    bool as_json = false;
    bool parallel = false;
    bool force = false;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::int64_t> samples_override;
    std::optional<double> x0_override;
    std::optional<double> tol_override;

    CLI::App* check = app.add_subcommand("check", "Run axiom and hypothesis checks");
    check->add_option("--config", config_path, "JSON config path")
        ->required()
        ->check(CLI::ExistingFile);
    check->add_flag("--json", as_json, "Print the JSON report to standard output");
    check->add_option("--out", out_path, "Write the JSON report to this path");
    check->add_option("--seed", seed_override, "Override the config seed");
    check->add_option("--samples", samples_override, "Override the config sample count");
    check->add_flag("--parallel", parallel, "Run sampled scans with OpenMP");

    CLI::App* solve = app.add_subcommand("solve", "Verify hypotheses and run Picard iteration");
    solve->add_option("--config", config_path, "JSON config path")
        ->required()
        ->check(CLI::ExistingFile);
    solve->add_flag("--json", as_json, "Print the JSON report to standard output");
    solve->add_option("--out", out_path, "Write the JSON report to this path");
    solve->add_option("--x0", x0_override, "Override the starting point (1-d families)");
    solve->add_option("--tol", tol_override, "Override the tolerance");
    solve->add_option("--seed", seed_override, "Override the config seed");
    solve->add_flag("--parallel", parallel, "Run sampled scans with OpenMP");
    solve->add_flag("--force", force, "Run the solve even when hypotheses fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunConfig cfg;
    try {
        cfg = parse_run_config(load_json_file(config_path));
        if (seed_override) cfg.seed = *seed_override;
        if (samples_override) {
            if (*samples_override < 1) throw fcm::ConfigError("--samples must be >= 1");
            cfg.n_samples = *samples_override;
        }
        if (x0_override) cfg.x0 = fcm::Point{*x0_override};
        if (tol_override) {
            if (!(*tol_override > 0.0)) throw fcm::ConfigError("--tol must be positive");
            cfg.tol = *tol_override;
        }
    } catch (const fcm::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    const fcm::ExecutionPolicy policy =
        parallel ? fcm::ExecutionPolicy::parallel : fcm::ExecutionPolicy::serial;
    try {
        if (check->parsed()) return run_check(cfg, policy, as_json, out_path);
        return run_solve(cfg, policy, as_json, out_path, force);
    } catch (const fcm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fcm::ConfigMismatch& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fcm::Error& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return 1;
    }
}
