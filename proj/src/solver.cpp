#include "fcmetric/solver.hpp"

#include <cmath>
#include <sstream>

#include "fcmetric/errors.hpp"

namespace fcm {

namespace {

double metric_norm(const SpaceInstance& space, const Point& x, const Point& y, const Point& z) {
    return operator_norm(space.metric(x, y, z));
}

} // namespace

FixedPointReport picard(const SpaceInstance& space, const ContractionSpec& spec, const Point& x0,
                        double tol, int max_iter) {
    if (!space.contains(x0))
        throw DomainEscape(space.name + ": Picard start lies outside the domain");

    FixedPointReport report;
    report.start = x0;
    Point current = x0;
    for (int k = 0; k < max_iter; ++k) {
        Point next = spec.map(current);
        if (!space.contains(next)) {
            std::ostringstream msg;
            msg << space.name << ": Picard orbit leaves the domain at step " << (k + 1);
            throw DomainEscape(msg.str());
        }
        const double step = metric_norm(space, current, current, next);
        report.orbit_distances.push_back(step);
        current = std::move(next);
        report.iterations = k + 1;
        if (step <= tol) {
            report.converged = true;
            break;
        }
    }
    report.fixed_point = current;
    report.residual_norm = metric_norm(space, current, current, spec.map(current));
    return report;
}

BoundCheckReport cauchy_bound_check(const SpaceInstance& space, const ContractionSpec& spec,
                                    const Point& x0, int n, int q, double tol) {
    if (n < 0 || q < 1) throw ConfigError("Cauchy bound check needs n >= 0 and q >= 1");
    const CoefficientNorms norms = coefficient_norms(spec);
    if (!(norms.s_squared < 1.0)) {
        std::ostringstream msg;
        msg << "||S||^2 = " << norms.s_squared
            << " >= 1: the Cauchy estimate's series does not contract";
        throw NormBoundViolated(msg.str());
    }

    const std::vector<Point> pts = orbit(space, spec, x0, n + q);
    const auto idx = [](int i) { return static_cast<std::size_t>(i); };

    // Y_m, accumulated once up to m = n + q - 1; y_at[m] = Y_m (Y_0 = 0).
    // The running product collects C(x_{n+q}, x_{n+q}, x_j) for j = 1..i.
    const Point& anchor = pts[idx(n + q)];
    std::vector<double> y_at(idx(n + q), 0.0);
    AlgebraElement running = AlgebraElement::unit(space.algebra);
    double y = 0.0;
    double s_power = 1.0;
    for (int i = 1; i <= n + q - 1; ++i) {
        running = mul(running, space.control(anchor, anchor, pts[idx(i)]));
        s_power *= norms.s_squared;
        const AlgebraElement chain = mul(space.control(pts[idx(i)], pts[idx(i)], pts[idx(i + 1)]),
                                         running);
        y += s_power * operator_norm(chain);
        y_at[idx(i)] = y;
    }

    BoundCheckReport report;
    report.n = n;
    report.q = q;
    report.s_squared = norms.s_squared;
    report.s0_norm = metric_norm(space, pts[0], pts[0], pts[1]);
    report.c_n_norm = operator_norm(space.control(pts[idx(n)], pts[idx(n)], pts[idx(n + 1)]));
    const double y_n = n >= 1 ? y_at[idx(n)] : 0.0;
    report.y_gap = y_at[idx(n + q - 1)] - y_n;
    report.bound_value =
        2.0 * report.s0_norm *
        (report.c_n_norm * std::pow(norms.s_squared, n) + report.y_gap);
    report.observed = space.metric(pts[idx(n)], pts[idx(n)], pts[idx(n + q)]);
    report.observed_norm = operator_norm(report.observed);
    const AlgebraElement bound_elem = AlgebraElement::scalar(space.algebra, report.bound_value);
    report.margin = order_margin(report.observed, bound_elem);
    report.holds = report.margin >= -tol;
    return report;
}

UniquenessReport uniqueness_probe(const SpaceInstance& space, const ContractionSpec& spec,
                                  const std::vector<Point>& starts, double tol, int max_iter) {
    if (starts.empty()) throw EmptySample("uniqueness probe needs at least one start");
    UniquenessReport report;
    report.all_converged = true;
    for (const Point& s : starts) {
        report.runs.push_back(picard(space, spec, s, tol, max_iter));
        if (!report.runs.back().converged) report.all_converged = false;
    }
    for (std::size_t a = 0; a + 1 < report.runs.size(); ++a) {
        for (std::size_t b = a + 1; b < report.runs.size(); ++b) {
            const double d = metric_norm(space, report.runs[a].fixed_point,
                                         report.runs[a].fixed_point, report.runs[b].fixed_point);
            report.spread = std::max(report.spread, d);
        }
    }
    report.unique = report.all_converged && report.spread <= 10.0 * tol;
    return report;
}

} // namespace fcm
