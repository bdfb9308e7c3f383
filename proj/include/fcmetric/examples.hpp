#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcmetric/contraction.hpp"
#include "fcmetric/space.hpp"

namespace fcm {

/// Parameters for the built-in example spaces. Only the field relevant to
/// the chosen family is read: n_cap for naturals_r2, grid_step for
/// interval_m2.
struct ExampleConfig {
    std::string family;      ///< "naturals_r2" or "interval_m2"
    int n_cap = 50;          ///< naturals_r2 samples points from {0, ..., n_cap}; >= 3
    double grid_step = 0.25; ///< interval_m2 grid stratum spacing; in (0, 4]
};

/// A built example: the space, plus the canonical contraction when the
/// family defines one (interval_m2's T(x) = x / 8; naturals_r2 has none).
struct ExampleBundle {
    SpaceInstance space;
    std::optional<ContractionSpec> contraction;
};

/// Names accepted by build_example, in registry order.
std::vector<std::string> example_families();

/// Dispatches on config.family; throws ConfigMismatch for unknown families
/// or out-of-range parameters.
ExampleBundle build_example(const ExampleConfig& config);

/// Counting set X = {0, 1, ..., n_cap} with the componentwise plane R^2:
///   F(x, y, z) = ( (|x+z|^2 + |y+z|^2) / 2, same )
///   C(x, y, z) = ( |x + y - z + 1|, same )
/// Satisfies the controlled axioms on almost every sampled tuple but has
/// genuine controlled-triangle violations (e.g. the tuple x = y = z = 0,
/// a = 1, where the control vanishes); see the axioms test for the direct
/// evaluation. Refutes the single-factor (extended) inequality.
SpaceInstance build_example_naturals(const ExampleConfig& config);

/// Interval X = [0, 4] with 2x2 real matrices:
///   F(x, y, z) = (max{x, z} + max{y, z}) I
///   C(x, y, z) = (2 + max{x, y, z}) I
/// Sampling is stratified: even keys draw from the uniform distribution on
/// [0, 4], odd keys from the grid {0, grid_step, 2 grid_step, ...} so that
/// exact-arithmetic corners are revisited.
SpaceInstance build_example_interval(const ExampleConfig& config);

/// The contraction T(x) = x / 8 with P = diag(1 / (2 sqrt 2)), Q = R = 0,
/// in the given algebra (must be the 2x2 matrix algebra).
ContractionSpec interval_contraction(const AlgebraDescriptor& desc);

} // namespace fcm
