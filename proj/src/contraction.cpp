#include "fcmetric/contraction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "fcmetric/errors.hpp"
#include "fcmetric/rng.hpp"

namespace fcm {

namespace {

void require_coefficient_descriptors(const SpaceInstance& space, const ContractionSpec& spec) {
    if (!(spec.P.descriptor() == space.algebra) || !(spec.Q.descriptor() == space.algebra) ||
        !(spec.R.descriptor() == space.algebra)) {
        throw DescriptorMismatch(space.name +
                                 ": coefficient P/Q/R must live in the space's algebra");
    }
}

AlgebraElement metric_at(const SpaceInstance& space, const Point& x, const Point& y,
                         const Point& z) {
    AlgebraElement value = space.metric(x, y, z);
    if (!(value.descriptor() == space.algebra))
        throw DescriptorMismatch(space.name + ": metric returned a value from the wrong algebra");
    return value;
}

double control_norm(const SpaceInstance& space, const Point& x, const Point& y, const Point& z) {
    AlgebraElement value = space.control(x, y, z);
    if (!(value.descriptor() == space.algebra))
        throw DescriptorMismatch(space.name + ": control returned a value from the wrong algebra");
    return operator_norm(value);
}

// Certifies that the tail of a sequence has settled: every one of the last
// `tail` terms must agree with the final term to within tol * (1 + |final|).
// `what` names the sequence in the TailNotConverged message.
double certify_limit(const std::vector<double>& values, int tail, double tol,
                     const std::string& what) {
    const int n = static_cast<int>(values.size());
    const double final = values.back();
    if (!std::isfinite(final))
        throw TailNotConverged(what + " diverges (non-finite tail value)");
    const int first = std::max(0, n - tail);
    for (int i = first; i < n; ++i) {
        if (std::abs(values[static_cast<std::size_t>(i)] - final) > tol * (1.0 + std::abs(final))) {
            std::ostringstream msg;
            msg << what << " has not settled: term " << i << " = "
                << values[static_cast<std::size_t>(i)] << " vs final " << final;
            throw TailNotConverged(msg.str());
        }
    }
    return final;
}

} // namespace

const char* condition_name(ConditionId id) {
    switch (id) {
    case ConditionId::contractive_inequality: return "contractive_inequality";
    case ConditionId::coefficient_norms: return "coefficient_norms";
    case ConditionId::suplim_condition: return "suplim_condition";
    case ConditionId::control_limits: return "control_limits";
    case ConditionId::map_closure: return "map_closure";
    }
    return "unknown";
}

double HypothesisReport::value(const std::string& name) const {
    for (const auto& nv : computed_values)
        if (nv.name == name) return nv.value;
    throw ConfigError("no computed value named '" + name + "' in " +
                      condition_name(condition) + " report");
}

CoefficientNorms coefficient_norms(const ContractionSpec& spec) {
    CoefficientNorms norms;
    norms.norm_p = operator_norm(spec.P);
    norms.norm_q = operator_norm(spec.Q);
    norms.norm_r = operator_norm(spec.R);
    norms.sum_squares =
        norms.norm_p * norms.norm_p + norms.norm_q * norms.norm_q + norms.norm_r * norms.norm_r;
    const double r2 = norms.norm_r * norms.norm_r;
    if (r2 < 1.0)
        norms.s_squared = (norms.norm_p * norms.norm_p + norms.norm_q * norms.norm_q) / (1.0 - r2);
    else
        norms.s_squared = std::numeric_limits<double>::infinity();
    return norms;
}

std::vector<Point> orbit(const SpaceInstance& space, const ContractionSpec& spec, const Point& x0,
                         int n) {
    if (!space.contains(x0)) {
        std::ostringstream msg;
        msg << space.name << ": starting point lies outside the domain";
        throw DomainEscape(msg.str());
    }
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(n) + 1);
    points.push_back(x0);
    for (int k = 0; k < n; ++k) {
        Point next = spec.map(points.back());
        if (!space.contains(next)) {
            std::ostringstream msg;
            msg << space.name << ": orbit leaves the domain at step " << (k + 1);
            throw DomainEscape(msg.str());
        }
        points.push_back(std::move(next));
    }
    return points;
}

HypothesisReport verify_contraction_inequality(const SpaceInstance& space,
                                               const ContractionSpec& spec,
                                               const CheckParams& params) {
    require_coefficient_descriptors(space, spec);
    if (params.n_samples < 1) {
        std::ostringstream msg;
        msg << "contractive inequality scan needs at least one sample, got " << params.n_samples;
        throw EmptySample(msg.str());
    }

    std::vector<double> margins(static_cast<std::size_t>(params.n_samples), 0.0);
    std::atomic<std::int64_t> violations{0};
    IndexedSink<Witness> sink;

    for_each_index(params.n_samples, params.policy, [&](std::int64_t i) {
        const Point x = space.sample(derive_key(params.seed, i, 0));
        const Point y = space.sample(derive_key(params.seed, i, 1));
        const Point tx = spec.map(x);
        const Point ty = spec.map(y);

        AlgebraElement lhs = metric_at(space, tx, tx, ty);
        AlgebraElement rhs = conjugate_by(spec.P, metric_at(space, x, x, y));
        rhs = add(rhs, conjugate_by(spec.Q, metric_at(space, x, x, tx)));
        rhs = add(rhs, conjugate_by(spec.R, metric_at(space, y, y, ty)));

        const double m = order_margin(lhs, rhs);
        margins[static_cast<std::size_t>(i)] = m;
        if (m < -params.tol) {
            violations.fetch_add(1, std::memory_order_relaxed);
            Witness w;
            w.sample_index = i;
            w.points = {x, y};
            w.lhs = std::move(lhs);
            w.rhs = std::move(rhs);
            w.margin = -m;
            w.detail = "contractive inequality";
            sink.push(i, std::move(w));
        }
    });

    HypothesisReport report;
    report.condition = ConditionId::contractive_inequality;
    report.passed = violations.load() == 0;
    report.computed_values.push_back(
        {"min_margin", *std::min_element(margins.begin(), margins.end())});
    report.computed_values.push_back({"n_violations", static_cast<double>(violations.load())});
    auto items = sink.take_sorted();
    const int cap = std::max(params.max_witnesses, 0);
    for (auto& item : items) {
        if (static_cast<int>(report.witnesses.size()) >= cap) break;
        report.witnesses.push_back(std::move(item.second));
    }
    return report;
}

HypothesisReport verify_coefficient_norms(const ContractionSpec& spec) {
    const CoefficientNorms norms = coefficient_norms(spec);
    HypothesisReport report;
    report.condition = ConditionId::coefficient_norms;
    report.passed = norms.sum_squares < 1.0;
    report.computed_values = {
        {"norm_P", norms.norm_p},    {"norm_Q", norms.norm_q},
        {"norm_R", norms.norm_r},    {"sum_squares", norms.sum_squares},
        {"S_squared", norms.s_squared},
    };
    return report;
}

HypothesisReport verify_suplim(const SpaceInstance& space, const ContractionSpec& spec,
                               const Point& x0, const LimitParams& params) {
    require_coefficient_descriptors(space, spec);
    const CoefficientNorms norms = coefficient_norms(spec);
    const double pq = norms.norm_p * norms.norm_p + norms.norm_q * norms.norm_q;
    const double threshold = pq > 0.0
                                 ? (1.0 - norms.norm_r * norms.norm_r) / pq
                                 : std::numeric_limits<double>::infinity();

    // a_i(m) = ||C(x_{i+1}, x_{i+1}, x_{i+2}) C(x_{i+1}, x_{i+1}, x_m)||
    // needs orbit points up to index max(i_max + 2, m_max).
    const int top = std::max(params.i_max + 2, params.m_max);
    const std::vector<Point> pts = orbit(space, spec, x0, top);

    double sup = -std::numeric_limits<double>::infinity();
    int argmax_m = 0;
    for (int m = 1; m <= params.m_max; ++m) {
        std::vector<double> a;
        a.reserve(static_cast<std::size_t>(params.i_max) + 1);
        for (int i = 0; i <= params.i_max; ++i) {
            const Point& xi1 = pts[static_cast<std::size_t>(i) + 1];
            const Point& xi2 = pts[static_cast<std::size_t>(i) + 2];
            const Point& xm = pts[static_cast<std::size_t>(m)];
            const AlgebraElement product =
                mul(space.control(xi1, xi1, xi2), space.control(xi1, xi1, xm));
            a.push_back(operator_norm(product));
        }
        std::ostringstream what;
        what << "sup-lim inner sequence at m = " << m;
        const double limit = certify_limit(a, params.tail, params.tol, what.str());
        if (limit > sup) {
            sup = limit;
            argmax_m = m;
        }
    }

    HypothesisReport report;
    report.condition = ConditionId::suplim_condition;
    report.passed = sup < threshold;
    report.computed_values = {
        {"threshold", threshold},
        {"sup_limit", sup},
        {"argmax_m", static_cast<double>(argmax_m)},
        {"i_max", static_cast<double>(params.i_max)},
        {"m_max", static_cast<double>(params.m_max)},
    };
    return report;
}

HypothesisReport verify_control_limits(const SpaceInstance& space, const ContractionSpec& spec,
                                       const Point& x0, const std::vector<Point>& probes,
                                       const LimitParams& params) {
    if (probes.empty()) throw EmptySample("control-limit check needs at least one probe point");
    const std::vector<Point> pts = orbit(space, spec, x0, params.i_max);

    HypothesisReport report;
    report.condition = ConditionId::control_limits;
    report.passed = true;
    for (std::size_t j = 0; j < probes.size(); ++j) {
        std::vector<double> b; // ||C(x_n, x_n, probe)||
        std::vector<double> c; // ||C(probe, probe, x_n)||
        b.reserve(pts.size());
        c.reserve(pts.size());
        for (const Point& xn : pts) {
            b.push_back(control_norm(space, xn, xn, probes[j]));
            c.push_back(control_norm(space, probes[j], probes[j], xn));
        }
        std::ostringstream bwhat, cwhat;
        bwhat << "||C(x_n, x_n, probe " << j << ")||";
        cwhat << "||C(probe " << j << ", probe " << j << ", x_n)||";
        const double b_limit = certify_limit(b, params.tail, params.tol, bwhat.str());
        const double c_limit = certify_limit(c, params.tail, params.tol, cwhat.str());
        report.computed_values.push_back({"b_limit_" + std::to_string(j), b_limit});
        report.computed_values.push_back({"c_limit_" + std::to_string(j), c_limit});
        if (!std::isfinite(b_limit) || !std::isfinite(c_limit)) report.passed = false;
    }
    return report;
}

HypothesisReport validate_map_closure(const SpaceInstance& space, const ContractionSpec& spec,
                                      const CheckParams& params) {
    if (params.n_samples < 1) {
        std::ostringstream msg;
        msg << "map-closure scan needs at least one sample, got " << params.n_samples;
        throw EmptySample(msg.str());
    }
    std::atomic<std::int64_t> violations{0};
    IndexedSink<Witness> sink;

    for_each_index(params.n_samples, params.policy, [&](std::int64_t i) {
        const Point x = space.sample(derive_key(params.seed, i, 0));
        const Point tx = spec.map(x);
        if (space.contains(tx)) return;
        double escape = 0.0;
        for (int c = 0; c < space.point_dim && c < static_cast<int>(tx.size()); ++c) {
            const auto cc = static_cast<std::size_t>(c);
            if (tx[cc] < space.domain_lo[cc])
                escape = std::max(escape, space.domain_lo[cc] - tx[cc]);
            if (tx[cc] > space.domain_hi[cc])
                escape = std::max(escape, tx[cc] - space.domain_hi[cc]);
        }
        if (static_cast<int>(tx.size()) != space.point_dim)
            escape = std::numeric_limits<double>::infinity();
        violations.fetch_add(1, std::memory_order_relaxed);
        Witness w;
        w.sample_index = i;
        w.points = {x, tx};
        w.lhs = AlgebraElement::zero(space.algebra);
        w.rhs = AlgebraElement::zero(space.algebra);
        w.margin = escape;
        w.detail = "map escapes the domain";
        sink.push(i, std::move(w));
    });

    HypothesisReport report;
    report.condition = ConditionId::map_closure;
    report.passed = violations.load() == 0;
    report.computed_values.push_back({"n_violations", static_cast<double>(violations.load())});
    auto items = sink.take_sorted();
    const int cap = std::max(params.max_witnesses, 0);
    for (auto& item : items) {
        if (static_cast<int>(report.witnesses.size()) >= cap) break;
        report.witnesses.push_back(std::move(item.second));
    }
    return report;
}

} // namespace fcm
