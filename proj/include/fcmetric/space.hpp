#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fcmetric/algebra.hpp"
#include "fcmetric/scan.hpp"

namespace fcm {

/// A point of the ground set X, as a coordinate vector (dimension 1 for the
/// interval and counting examples; higher dimensions are allowed).
using Point = std::vector<double>;

/// Evaluates a map X^3 -> A, used for both the metric F and the control C.
using TripleEval = std::function<AlgebraElement(const Point&, const Point&, const Point&)>;

/// One concrete space: ground set (as a box domain plus sampler), the
/// algebra its metric takes values in, and the metric/control pair.
struct SpaceInstance {
    std::string name;
    AlgebraDescriptor algebra;
    int point_dim = 1;
    std::vector<double> domain_lo; ///< per-coordinate lower bounds
    std::vector<double> domain_hi; ///< per-coordinate upper bounds
    std::function<Point(std::uint64_t)> sample; ///< key -> point of X
    TripleEval metric;  ///< F(x, y, z)
    TripleEval control; ///< C(x, y, z)
    double point_eq_tol = 1e-12; ///< coordinate tolerance for "same point"

    bool contains(const Point& p) const;
    bool points_equal(const Point& a, const Point& b) const;
};

/// The axioms and side conditions a check run can exercise.
enum class AxiomId {
    identity_of_indiscernibles, ///< x = y = z iff F(x,x,x), F(y,y,y), F(z,z,z), F(x,y,z) coincide
    order_chain,                ///< 0 <= F(x,x,x) <= F(x,x,y) <= F(x,y,z), triple sorted
    controlled_triangle,        ///< pointwise-controlled triangle inequality
    symmetry,                   ///< F(x,x,y) = F(y,y,x)
    zero_implies_equal,         ///< vanishing metric forces equal points
    control_admissibility,      ///< C takes values in the commutant above the unit
    extended_triangle,          ///< single-factor variant; expected to fail on some spaces
};

const char* axiom_name(AxiomId id);

/// One recorded violation. `margin` is the positive severity: how far the
/// failing comparison is from holding (order defects measure the most
/// negative eigenvalue of rhs - lhs; equality defects measure a norm or a
/// coordinate distance). Witnesses carry enough data to re-evaluate offline.
struct Witness {
    std::int64_t sample_index = -1; ///< -1 when produced by a direct evaluator
    std::vector<Point> points;      ///< offending tuple, in evaluation order
    AlgebraElement lhs;
    AlgebraElement rhs;
    double margin = 0.0;
    std::string detail; ///< short human-readable tag, e.g. "order chain link 2"
};

/// Outcome of scanning one axiom over sampled tuples.
struct AxiomReport {
    AxiomId axiom = AxiomId::identity_of_indiscernibles;
    std::int64_t n_samples = 0;
    std::int64_t n_violations = 0;
    std::vector<Witness> witnesses; ///< ascending sample index, capped
    bool passed() const { return n_violations == 0; }
};

/// Common knobs for a sampled check. Sampling is counter-based: tuple slot t
/// of sample i uses key derive_key(seed, i, t), so a longer run revisits
/// exactly the samples of a shorter one and parallel runs match serial ones.
struct CheckParams {
    std::int64_t n_samples = 10000;
    std::uint64_t seed = 1;
    ExecutionPolicy policy = ExecutionPolicy::serial;
    double tol = 1e-9;
    int max_witnesses = 8;
};

// Direct per-tuple evaluators. Each returns a Witness (sample_index -1) when
// the tuple violates the property, or nullopt when it holds. The sampled
// checks below are thin scans over these, so a reported witness can always
// be replayed.
std::optional<Witness> evaluate_identity_at(const SpaceInstance& space, const Point& x,
                                            const Point& y, const Point& z, double tol);
std::optional<Witness> evaluate_order_at(const SpaceInstance& space, const Point& x,
                                         const Point& y, const Point& z, double tol);
std::optional<Witness> evaluate_triangle_at(const SpaceInstance& space, const Point& x,
                                            const Point& y, const Point& z, const Point& a,
                                            double tol);
std::optional<Witness> evaluate_symmetry_at(const SpaceInstance& space, const Point& x,
                                            const Point& y, double tol);
std::optional<Witness> evaluate_zero_equal_at(const SpaceInstance& space, const Point& x,
                                              const Point& y, const Point& z, double tol);
std::optional<Witness> evaluate_admissibility_at(const SpaceInstance& space, const Point& x,
                                                 const Point& y, const Point& z,
                                                 std::span<const AlgebraElement> generators,
                                                 double tol);
std::optional<Witness> evaluate_extended_at(const SpaceInstance& space, const Point& x,
                                            const Point& y, const Point& z, const Point& a,
                                            double tol);

// Sampled axiom checks. All throw EmptySample when params.n_samples < 1 and
// DescriptorMismatch when the metric or control returns a value from the
// wrong algebra.
AxiomReport check_identity(const SpaceInstance& space, const CheckParams& params);
AxiomReport check_order(const SpaceInstance& space, const CheckParams& params);
AxiomReport check_triangle(const SpaceInstance& space, const CheckParams& params);
AxiomReport check_symmetry(const SpaceInstance& space, const CheckParams& params);
AxiomReport check_zero_equal(const SpaceInstance& space, const CheckParams& params);
AxiomReport check_control_admissibility(const SpaceInstance& space, const CheckParams& params);

/// Dispatch by axiom id (extended_triangle maps to the refutation scan's
/// violation count: the report "passes" when no extended witness exists).
AxiomReport check_axiom(const SpaceInstance& space, AxiomId id, const CheckParams& params);

/// Searches for a tuple violating the single-factor (extended) triangle
/// inequality. Returns the violation with the smallest sample index, or
/// nullopt if the sampled tuples all satisfy it.
std::optional<Witness> refute_extended(const SpaceInstance& space, const CheckParams& params);

/// Generators used by the commutant test: the full matrix-unit basis (which
/// spans the algebra, so commuting with it decides centrality) plus a few
/// seed-derived random elements as a cross-check. Componentwise algebras are
/// commutative and get an empty list.
std::vector<AlgebraElement> admissibility_generators(const AlgebraDescriptor& desc,
                                                     std::uint64_t seed);

} // namespace fcm
