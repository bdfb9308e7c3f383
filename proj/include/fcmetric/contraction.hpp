#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fcmetric/algebra.hpp"
#include "fcmetric/space.hpp"

namespace fcm {

/// A candidate contraction on a space: the self-map T together with the
/// coefficient triple (P, Q, R) of the contractive condition
///   F(Tx, Tx, Ty) <= P* F(x,x,y) P + Q* F(x,x,Tx) Q + R* F(y,y,Ty) R.
struct ContractionSpec {
    std::string name; ///< display form of the map, e.g. "T(x) = x / 8"
    std::function<Point(const Point&)> map;
    AlgebraElement P;
    AlgebraElement Q;
    AlgebraElement R;
};

/// The individual hypotheses of the fixed-point theorem.
enum class ConditionId {
    contractive_inequality, ///< the operator inequality above, sampled
    coefficient_norms,      ///< ||P||^2 + ||Q||^2 + ||R||^2 < 1
    suplim_condition,       ///< sup_m lim_i ||C(x_{i+1},x_{i+1},x_{i+2}) C(x_{i+1},x_{i+1},x_m)||
    control_limits,         ///< lim_n ||C(x,x,x_n)|| and lim_n ||C(x_n,x_n,x)|| exist
    map_closure,            ///< T maps the domain into itself
};

const char* condition_name(ConditionId id);

/// A labelled scalar in a hypothesis report (norms, thresholds, limits).
struct NamedValue {
    std::string name;
    double value = 0.0;
};

/// Outcome of verifying one hypothesis.
struct HypothesisReport {
    ConditionId condition = ConditionId::contractive_inequality;
    bool passed = false;
    std::vector<NamedValue> computed_values;
    std::vector<Witness> witnesses;
    double value(const std::string& name) const; ///< lookup; throws ConfigError if absent
};

/// Knobs for the limit-based hypotheses. A limit is accepted when the last
/// `tail` terms up to index i_max agree with the final term to within
/// tol * (1 + |final|); otherwise the check throws TailNotConverged.
struct LimitParams {
    int i_max = 64;
    int m_max = 64;
    int tail = 5;
    double tol = 1e-9;
};

/// Scalar summary of the coefficient triple: the three operator norms, their
/// squared sum, and ||S||^2 = (||P||^2 + ||Q||^2) / (1 - ||R||^2).
struct CoefficientNorms {
    double norm_p = 0.0;
    double norm_q = 0.0;
    double norm_r = 0.0;
    double sum_squares = 0.0;
    double s_squared = 0.0; ///< +inf when ||R||^2 >= 1
};

CoefficientNorms coefficient_norms(const ContractionSpec& spec);

/// Picard orbit x0, T(x0), ..., T^n(x0); length n + 1. Throws DomainEscape
/// when an iterate (or x0 itself) leaves the space's domain box.
std::vector<Point> orbit(const SpaceInstance& space, const ContractionSpec& spec,
                         const Point& x0, int n);

/// Samples point pairs and verifies the contractive operator inequality.
/// computed_values: min_margin (most negative slack seen, >= 0 when all
/// samples satisfy the inequality with room to spare).
HypothesisReport verify_contraction_inequality(const SpaceInstance& space,
                                               const ContractionSpec& spec,
                                               const CheckParams& params);

/// Verifies ||P||^2 + ||Q||^2 + ||R||^2 < 1 and records the derived ||S||^2.
HypothesisReport verify_coefficient_norms(const ContractionSpec& spec);

/// Verifies the sup-lim control condition along the orbit of x0 against the
/// threshold (1 - ||R||^2) / (||P||^2 + ||Q||^2) (+inf when P = Q = 0, which
/// makes the condition vacuous). computed_values: threshold, sup_limit,
/// argmax_m, plus the per-run i_max/m_max actually used.
HypothesisReport verify_suplim(const SpaceInstance& space, const ContractionSpec& spec,
                               const Point& x0, const LimitParams& params);

/// Verifies that ||C(x, x, x_n)|| and ||C(x_n, x_n, x)|| converge along the
/// orbit of x0 for every probe point. computed_values per probe j:
/// b_limit_j = lim ||C(x_n, x_n, probe)||, c_limit_j = lim ||C(probe, probe, x_n)||.
HypothesisReport verify_control_limits(const SpaceInstance& space, const ContractionSpec& spec,
                                       const Point& x0, const std::vector<Point>& probes,
                                       const LimitParams& params);

/// Samples domain points and checks T keeps them inside the domain box.
/// Witness margins measure the escape distance.
HypothesisReport validate_map_closure(const SpaceInstance& space, const ContractionSpec& spec,
                                      const CheckParams& params);

} // namespace fcm
