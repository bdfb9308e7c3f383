#include "fcmetric/space.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <utility>

#include "fcmetric/errors.hpp"
#include "fcmetric/rng.hpp"

namespace fcm {

namespace {

// Largest coordinate gap over all pairs of the tuple; the severity used when
// an equality-type axiom fails because points that should coincide do not.
double point_spread(const std::vector<Point>& pts) {
    double spread = 0.0;
    for (std::size_t a = 0; a + 1 < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            const std::size_t n = std::min(pts[a].size(), pts[b].size());
            for (std::size_t c = 0; c < n; ++c)
                spread = std::max(spread, std::abs(pts[a][c] - pts[b][c]));
        }
    }
    return spread;
}

AlgebraElement eval_map(const SpaceInstance& space, const TripleEval& map, const char* what,
                        const Point& x, const Point& y, const Point& z) {
    AlgebraElement value = map(x, y, z);
    if (!(value.descriptor() == space.algebra)) {
        std::ostringstream msg;
        msg << space.name << ": " << what << " returned a value from the wrong algebra";
        throw DescriptorMismatch(msg.str());
    }
    return value;
}

AlgebraElement eval_metric(const SpaceInstance& space, const Point& x, const Point& y,
                           const Point& z) {
    return eval_map(space, space.metric, "metric", x, y, z);
}

AlgebraElement eval_control(const SpaceInstance& space, const Point& x, const Point& y,
                            const Point& z) {
    return eval_map(space, space.control, "control", x, y, z);
}

Witness make_witness(std::vector<Point> pts, AlgebraElement lhs, AlgebraElement rhs,
                     double margin, std::string detail) {
    Witness w;
    w.points = std::move(pts);
    w.lhs = std::move(lhs);
    w.rhs = std::move(rhs);
    w.margin = margin;
    w.detail = std::move(detail);
    return w;
}

// Shared scan driver: samples `tuple_size` points per index with
// counter-based keys and funnels violations through a deterministic sink so
// serial and parallel runs produce identical reports.
template <class EvalFn>
AxiomReport run_scan(AxiomId id, const SpaceInstance& space, const CheckParams& params,
                     int tuple_size, EvalFn&& eval) {
    if (params.n_samples < 1) {
        std::ostringstream msg;
        msg << axiom_name(id) << " scan needs at least one sample, got " << params.n_samples;
        throw EmptySample(msg.str());
    }
    AxiomReport report;
    report.axiom = id;
    report.n_samples = params.n_samples;

    std::atomic<std::int64_t> violations{0};
    IndexedSink<Witness> sink;
    for_each_index(params.n_samples, params.policy, [&](std::int64_t i) {
        std::vector<Point> pts(static_cast<std::size_t>(tuple_size));
        for (int t = 0; t < tuple_size; ++t)
            pts[static_cast<std::size_t>(t)] = space.sample(derive_key(params.seed, i, t));
        std::optional<Witness> w = eval(pts);
        if (w) {
            w->sample_index = i;
            violations.fetch_add(1, std::memory_order_relaxed);
            sink.push(i, std::move(*w));
        }
    });

    report.n_violations = violations.load();
    auto items = sink.take_sorted();
    // At least one witness survives the cap, so "passed" is equivalent to
    // "witnesses empty" on every report.
    const int cap = std::max(params.max_witnesses, 1);
    for (auto& item : items) {
        if (static_cast<int>(report.witnesses.size()) >= cap) break;
        report.witnesses.push_back(std::move(item.second));
    }
    return report;
}

} // namespace

bool SpaceInstance::contains(const Point& p) const {
    if (static_cast<int>(p.size()) != point_dim) return false;
    for (int c = 0; c < point_dim; ++c) {
        const auto cc = static_cast<std::size_t>(c);
        if (!(p[cc] >= domain_lo[cc] && p[cc] <= domain_hi[cc])) return false;
    }
    return true;
}

bool SpaceInstance::points_equal(const Point& a, const Point& b) const {
    if (a.size() != b.size()) return false;
    for (std::size_t c = 0; c < a.size(); ++c)
        if (std::abs(a[c] - b[c]) > point_eq_tol) return false;
    return true;
}

const char* axiom_name(AxiomId id) {
    switch (id) {
    case AxiomId::identity_of_indiscernibles: return "identity_of_indiscernibles";
    case AxiomId::order_chain: return "order_chain";
    case AxiomId::controlled_triangle: return "controlled_triangle";
    case AxiomId::symmetry: return "symmetry";
    case AxiomId::zero_implies_equal: return "zero_implies_equal";
    case AxiomId::control_admissibility: return "control_admissibility";
    case AxiomId::extended_triangle: return "extended_triangle";
    }
    return "unknown";
}

std::optional<Witness> evaluate_identity_at(const SpaceInstance& space, const Point& x,
                                            const Point& y, const Point& z, double tol) {
    // The axiom ties x = y = z to the coincidence of the four values
    // F(x,x,x), F(y,y,y), F(z,z,z), F(x,y,z). The forward direction is
    // definitionally true, so only the reverse direction can fail: distinct
    // points whose four values all agree.
    const bool all_equal = space.points_equal(x, y) && space.points_equal(y, z);
    if (all_equal) return std::nullopt;
    const AlgebraElement values[] = {
        eval_metric(space, x, x, x),
        eval_metric(space, y, y, y),
        eval_metric(space, z, z, z),
        eval_metric(space, x, y, z),
    };
    double coincidence = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            coincidence = std::max(coincidence, operator_norm(sub(values[a], values[b])));
    if (coincidence <= tol) {
        return make_witness({x, y, z}, values[3], values[0], point_spread({x, y, z}),
                            "distinct points with coinciding metric values");
    }
    return std::nullopt;
}

std::optional<Witness> evaluate_order_at(const SpaceInstance& space, const Point& x,
                                         const Point& y, const Point& z, double tol) {
    // The chain compares F over nested prefixes of one weakly increasing
    // triple, so sort the sample before evaluating the three links.
    std::vector<Point> pts{x, y, z};
    std::sort(pts.begin(), pts.end());
    const Point& p0 = pts[0];
    const Point& p1 = pts[1];
    const Point& p2 = pts[2];

    AlgebraElement f_diag = eval_metric(space, p0, p0, p0);
    AlgebraElement f_pair = eval_metric(space, p0, p0, p1);
    AlgebraElement f_full = eval_metric(space, p0, p1, p2);

    const AlgebraElement zero = AlgebraElement::zero(space.algebra);
    const double m1 = order_margin(zero, f_diag);
    if (m1 < -tol)
        return make_witness(pts, zero, f_diag, -m1, "order chain link 1 (positivity)");
    const double m2 = order_margin(f_diag, f_pair);
    if (m2 < -tol) return make_witness(pts, f_diag, f_pair, -m2, "order chain link 2");
    const double m3 = order_margin(f_pair, f_full);
    if (m3 < -tol) return make_witness(pts, f_pair, f_full, -m3, "order chain link 3");
    return std::nullopt;
}

std::optional<Witness> evaluate_triangle_at(const SpaceInstance& space, const Point& x,
                                            const Point& y, const Point& z, const Point& a,
                                            double tol) {
    AlgebraElement lhs = eval_metric(space, x, y, z);
    AlgebraElement rhs = mul(eval_control(space, x, x, a), eval_metric(space, x, x, a));
    rhs = add(rhs, mul(eval_control(space, y, y, a), eval_metric(space, y, y, a)));
    rhs = add(rhs, mul(eval_control(space, z, z, a), eval_metric(space, z, z, a)));
    rhs = sub(rhs, eval_metric(space, a, a, a));

    const double m = order_margin(lhs, rhs);
    if (m < -tol) return make_witness({x, y, z, a}, lhs, rhs, -m, "controlled triangle");
    return std::nullopt;
}

std::optional<Witness> evaluate_symmetry_at(const SpaceInstance& space, const Point& x,
                                            const Point& y, double tol) {
    AlgebraElement lhs = eval_metric(space, x, x, y);
    AlgebraElement rhs = eval_metric(space, y, y, x);
    const double defect = operator_norm(sub(lhs, rhs));
    if (defect > tol) return make_witness({x, y}, lhs, rhs, defect, "symmetry defect");
    return std::nullopt;
}

std::optional<Witness> evaluate_zero_equal_at(const SpaceInstance& space, const Point& x,
                                              const Point& y, const Point& z, double tol) {
    AlgebraElement value = eval_metric(space, x, y, z);
    if (operator_norm(value) > tol) return std::nullopt;
    const bool all_equal = space.points_equal(x, y) && space.points_equal(y, z);
    if (all_equal) return std::nullopt;
    return make_witness({x, y, z}, value, AlgebraElement::zero(space.algebra),
                        point_spread({x, y, z}), "vanishing metric at distinct points");
}

std::optional<Witness> evaluate_admissibility_at(const SpaceInstance& space, const Point& x,
                                                 const Point& y, const Point& z,
                                                 std::span<const AlgebraElement> generators,
                                                 double tol) {
    AlgebraElement value = eval_control(space, x, y, z);
    const double sa_defect = self_adjoint_defect(value);
    if (sa_defect > tol) {
        return make_witness({x, y, z}, value, adjoint(value), sa_defect,
                            "control value not self-adjoint");
    }
    const AlgebraElement unit = AlgebraElement::unit(space.algebra);
    const double unit_margin = order_margin(unit, value);
    if (unit_margin < -tol) {
        return make_witness({x, y, z}, unit, value, -unit_margin,
                            "control value below the unit");
    }
    for (std::size_t k = 0; k < generators.size(); ++k) {
        AlgebraElement zg = mul(value, generators[k]);
        AlgebraElement gz = mul(generators[k], value);
        const double residual = operator_norm(sub(zg, gz));
        const double scale =
            1.0 + operator_norm(value) * operator_norm(generators[k]);
        if (residual > tol * scale) {
            std::ostringstream detail;
            detail << "control value does not commute with generator " << k;
            return make_witness({x, y, z}, zg, gz, residual, detail.str());
        }
    }
    return std::nullopt;
}

std::optional<Witness> evaluate_extended_at(const SpaceInstance& space, const Point& x,
                                            const Point& y, const Point& z, const Point& a,
                                            double tol) {
    AlgebraElement lhs = eval_metric(space, x, y, z);
    AlgebraElement sum = add(eval_metric(space, x, x, a), eval_metric(space, y, y, a));
    sum = add(sum, eval_metric(space, z, z, a));
    AlgebraElement rhs = sub(mul(eval_control(space, x, y, z), sum), eval_metric(space, a, a, a));

    const double m = order_margin(lhs, rhs);
    if (m < -tol) return make_witness({x, y, z, a}, lhs, rhs, -m, "extended triangle");
    return std::nullopt;
}

AxiomReport check_identity(const SpaceInstance& space, const CheckParams& params) {
    return run_scan(AxiomId::identity_of_indiscernibles, space, params, 3,
                    [&](const std::vector<Point>& p) {
                        return evaluate_identity_at(space, p[0], p[1], p[2], params.tol);
                    });
}

AxiomReport check_order(const SpaceInstance& space, const CheckParams& params) {
    return run_scan(AxiomId::order_chain, space, params, 3, [&](const std::vector<Point>& p) {
        return evaluate_order_at(space, p[0], p[1], p[2], params.tol);
    });
}

AxiomReport check_triangle(const SpaceInstance& space, const CheckParams& params) {
    return run_scan(AxiomId::controlled_triangle, space, params, 4,
                    [&](const std::vector<Point>& p) {
                        return evaluate_triangle_at(space, p[0], p[1], p[2], p[3], params.tol);
                    });
}

AxiomReport check_symmetry(const SpaceInstance& space, const CheckParams& params) {
    return run_scan(AxiomId::symmetry, space, params, 2, [&](const std::vector<Point>& p) {
        return evaluate_symmetry_at(space, p[0], p[1], params.tol);
    });
}

AxiomReport check_zero_equal(const SpaceInstance& space, const CheckParams& params) {
    return run_scan(AxiomId::zero_implies_equal, space, params, 3,
                    [&](const std::vector<Point>& p) {
                        return evaluate_zero_equal_at(space, p[0], p[1], p[2], params.tol);
                    });
}

AxiomReport check_control_admissibility(const SpaceInstance& space, const CheckParams& params) {
    const std::vector<AlgebraElement> generators =
        admissibility_generators(space.algebra, params.seed);
    return run_scan(AxiomId::control_admissibility, space, params, 3,
                    [&](const std::vector<Point>& p) {
                        return evaluate_admissibility_at(space, p[0], p[1], p[2], generators,
                                                         params.tol);
                    });
}

AxiomReport check_axiom(const SpaceInstance& space, AxiomId id, const CheckParams& params) {
    switch (id) {
    case AxiomId::identity_of_indiscernibles: return check_identity(space, params);
    case AxiomId::order_chain: return check_order(space, params);
    case AxiomId::controlled_triangle: return check_triangle(space, params);
    case AxiomId::symmetry: return check_symmetry(space, params);
    case AxiomId::zero_implies_equal: return check_zero_equal(space, params);
    case AxiomId::control_admissibility: return check_control_admissibility(space, params);
    case AxiomId::extended_triangle:
        return run_scan(AxiomId::extended_triangle, space, params, 4,
                        [&](const std::vector<Point>& p) {
                            return evaluate_extended_at(space, p[0], p[1], p[2], p[3],
                                                        params.tol);
                        });
    }
    throw ConfigError("unknown axiom id");
}

std::optional<Witness> refute_extended(const SpaceInstance& space, const CheckParams& params) {
    CheckParams scan = params;
    scan.max_witnesses = std::max(scan.max_witnesses, 1);
    AxiomReport report = check_axiom(space, AxiomId::extended_triangle, scan);
    if (report.witnesses.empty()) return std::nullopt;
    return report.witnesses.front();
}

std::vector<AlgebraElement> admissibility_generators(const AlgebraDescriptor& desc,
                                                     std::uint64_t seed) {
    std::vector<AlgebraElement> gens;
    if (desc.kind != AlgebraKind::matrix) return gens; // componentwise algebras commute
    const int n = desc.dim;
    // Matrix units span the algebra, so commuting with all of them is
    // equivalent to lying in the center.
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            std::vector<double> entries(static_cast<std::size_t>(n) * n, 0.0);
            entries[static_cast<std::size_t>(p) * n + q] = 1.0;
            gens.emplace_back(desc, std::move(entries));
        }
    }
    // Two dense random elements as a cross-check on the basis argument.
    SplitMix64 rng(derive_key(seed, 0, 13));
    for (int r = 0; r < 2; ++r) {
        std::vector<double> entries(static_cast<std::size_t>(n) * n, 0.0);
        for (auto& e : entries) e = rng.next_uniform(-1.0, 1.0);
        gens.emplace_back(desc, std::move(entries));
    }
    return gens;
}

} // namespace fcm
