#pragma once

#include <vector>

#include "fcmetric/contraction.hpp"
#include "fcmetric/space.hpp"

namespace fcm {

/// Result of one Picard iteration run.
struct FixedPointReport {
    bool converged = false;
    int iterations = 0; ///< number of map applications performed
    Point start;
    Point fixed_point; ///< last iterate (the fixed point when converged)
    double residual_norm = 0.0; ///< ||F(x*, x*, Tx*)||, recomputed at the end
    std::vector<double> orbit_distances; ///< ||F(x_k, x_k, x_{k+1})||, one per iteration
};

/// Iterates x_{k+1} = T(x_k) until ||F(x_k, x_k, x_{k+1})|| <= tol or
/// max_iter applications. Throws DomainEscape if the orbit leaves the domain.
FixedPointReport picard(const SpaceInstance& space, const ContractionSpec& spec, const Point& x0,
                        double tol = 1e-9, int max_iter = 10000);

/// One instance of the explicit Cauchy estimate along the orbit of x0:
///   F(x_n, x_n, x_{n+q})  <=  2 ||S_0|| [ ||C(x_n, x_n, x_{n+1})|| ||S||^{2n}
///                                         + (Y_{n+q-1} - Y_n) ] I
/// with S_0 = F(x_0, x_0, x_1), ||S||^2 = (||P||^2 + ||Q||^2) / (1 - ||R||^2)
/// and Y_m = sum_{i=1..m} ||S||^{2i} ||C(x_i, x_i, x_{i+1})
///                                     prod_{j=1..i} C(x_{n+q}, x_{n+q}, x_j)||.
struct BoundCheckReport {
    int n = 0;
    int q = 0;
    double s0_norm = 0.0;
    double s_squared = 0.0;
    double c_n_norm = 0.0;   ///< ||C(x_n, x_n, x_{n+1})||
    double y_gap = 0.0;      ///< Y_{n+q-1} - Y_n
    double bound_value = 0.0; ///< the scalar multiplying the unit on the right
    double observed_norm = 0.0;
    double margin = 0.0; ///< order margin of observed <= bound * I
    bool holds = false;
    AlgebraElement observed; ///< F(x_n, x_n, x_{n+q})
};

/// Evaluates the estimate for one (n, q) with n >= 0, q >= 1. Throws
/// NormBoundViolated when ||S||^2 >= 1 (the series underlying Y_m has no
/// reason to converge there, so the bound is not meaningful).
BoundCheckReport cauchy_bound_check(const SpaceInstance& space, const ContractionSpec& spec,
                                    const Point& x0, int n, int q, double tol = 1e-9);

/// Picard runs from several starts, compared pairwise in the metric.
struct UniquenessReport {
    bool unique = false;        ///< all runs converged to one point
    bool all_converged = false;
    double spread = 0.0; ///< max over pairs of ||F(a, a, b)|| between limits
    std::vector<FixedPointReport> runs;
};

/// Limits from each start count as the same point when the pairwise metric
/// norm is <= 10 * tol (the Picard stopping resolution).
UniquenessReport uniqueness_probe(const SpaceInstance& space, const ContractionSpec& spec,
                                  const std::vector<Point>& starts, double tol = 1e-9,
                                  int max_iter = 10000);

} // namespace fcm
