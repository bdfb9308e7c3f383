#include "fcmetric/report_json.hpp"

namespace fcm {

namespace {

nlohmann::json points_json(const std::vector<Point>& points) {
    nlohmann::json out = nlohmann::json::array();
    for (const Point& p : points) out.push_back(p);
    return out;
}

} // namespace

nlohmann::json to_json(const AlgebraDescriptor& desc) {
    return {
        {"kind", desc.kind == AlgebraKind::matrix ? "matrix" : "componentwise"},
        {"dim", desc.dim},
    };
}

nlohmann::json to_json(const AlgebraElement& value) {
    return {
        {"algebra", to_json(value.descriptor())},
        {"entries", std::vector<double>(value.entries().begin(), value.entries().end())},
    };
}

nlohmann::json to_json(const Witness& witness) {
    return {
        {"sample_index", witness.sample_index},
        {"points", points_json(witness.points)},
        {"lhs", to_json(witness.lhs)},
        {"rhs", to_json(witness.rhs)},
        {"margin", witness.margin},
        {"detail", witness.detail},
    };
}

nlohmann::json to_json(const AxiomReport& report) {
    nlohmann::json witnesses = nlohmann::json::array();
    for (const Witness& w : report.witnesses) witnesses.push_back(to_json(w));
    return {
        {"axiom", axiom_name(report.axiom)},
        {"n_samples", report.n_samples},
        {"n_violations", report.n_violations},
        {"passed", report.passed()},
        {"witnesses", std::move(witnesses)},
    };
}

nlohmann::json to_json(const HypothesisReport& report) {
    nlohmann::json values = nlohmann::json::object();
    for (const NamedValue& nv : report.computed_values) values[nv.name] = nv.value;
    nlohmann::json witnesses = nlohmann::json::array();
    for (const Witness& w : report.witnesses) witnesses.push_back(to_json(w));
    return {
        {"condition", condition_name(report.condition)},
        {"passed", report.passed},
        {"computed_values", std::move(values)},
        {"witnesses", std::move(witnesses)},
    };
}

nlohmann::json to_json(const FixedPointReport& report) {
    return {
        {"converged", report.converged},
        {"iterations", report.iterations},
        {"start", report.start},
        {"fixed_point", report.fixed_point},
        {"residual_norm", report.residual_norm},
        {"orbit_distances", report.orbit_distances},
    };
}

nlohmann::json to_json(const BoundCheckReport& report) {
    return {
        {"n", report.n},
        {"q", report.q},
        {"s0_norm", report.s0_norm},
        {"s_squared", report.s_squared},
        {"c_n_norm", report.c_n_norm},
        {"y_gap", report.y_gap},
        {"bound_value", report.bound_value},
        {"observed_norm", report.observed_norm},
        {"margin", report.margin},
        {"holds", report.holds},
        {"observed", to_json(report.observed)},
    };
}

nlohmann::json to_json(const UniquenessReport& report) {
    nlohmann::json runs = nlohmann::json::array();
    for (const FixedPointReport& r : report.runs) runs.push_back(to_json(r));
    return {
        {"unique", report.unique},
        {"all_converged", report.all_converged},
        {"spread", report.spread},
        {"runs", std::move(runs)},
    };
}

} // namespace fcm
