#include "fcmetric/examples.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fcmetric/errors.hpp"
#include "fcmetric/rng.hpp"

namespace fcm {

namespace {

void require_family(const ExampleConfig& config, const char* expected) {
    if (config.family != expected) {
        std::ostringstream msg;
        msg << "config family '" << config.family << "' does not name this example ('"
            << expected << "')";
        throw ConfigMismatch(msg.str());
    }
}

} // namespace

std::vector<std::string> example_families() { return {"naturals_r2", "interval_m2"}; }

ExampleBundle build_example(const ExampleConfig& config) {
    if (config.family == "naturals_r2")
        return ExampleBundle{build_example_naturals(config), std::nullopt};
    if (config.family == "interval_m2") {
        SpaceInstance space = build_example_interval(config);
        ContractionSpec contraction = interval_contraction(space.algebra);
        return ExampleBundle{std::move(space), std::move(contraction)};
    }
    std::ostringstream msg;
    msg << "unknown example family '" << config.family << "'; known:";
    for (const auto& f : example_families()) msg << ' ' << f;
    throw ConfigMismatch(msg.str());
}

SpaceInstance build_example_naturals(const ExampleConfig& config) {
    require_family(config, "naturals_r2");
    if (config.n_cap < 3) {
        std::ostringstream msg;
        msg << "naturals_r2 needs n_cap >= 3, got " << config.n_cap;
        throw ConfigMismatch(msg.str());
    }
    const AlgebraDescriptor desc{AlgebraKind::componentwise, 2};
    const int n_cap = config.n_cap;

    SpaceInstance space;
    space.name = "naturals_r2";
    space.algebra = desc;
    space.point_dim = 1;
    space.domain_lo = {0.0};
    space.domain_hi = {static_cast<double>(n_cap)};
    space.sample = [n_cap](std::uint64_t key) {
        SplitMix64 rng(key);
        return Point{static_cast<double>(rng.next_below(static_cast<std::uint64_t>(n_cap) + 1))};
    };
    space.metric = [desc](const Point& x, const Point& y, const Point& z) {
        const double u = std::abs(x[0] + z[0]);
        const double v = std::abs(y[0] + z[0]);
        const double value = 0.5 * (u * u + v * v);
        return AlgebraElement(desc, {value, value});
    };
    space.control = [desc](const Point& x, const Point& y, const Point& z) {
        const double value = std::abs(x[0] + y[0] - z[0] + 1.0);
        return AlgebraElement(desc, {value, value});
    };
    return space;
}

SpaceInstance build_example_interval(const ExampleConfig& config) {
    require_family(config, "interval_m2");
    if (!(config.grid_step > 0.0 && config.grid_step <= 4.0)) {
        std::ostringstream msg;
        msg << "interval_m2 needs grid_step in (0, 4], got " << config.grid_step;
        throw ConfigMismatch(msg.str());
    }
    const AlgebraDescriptor desc{AlgebraKind::matrix, 2};
    const double step = config.grid_step;
    const auto grid_count = static_cast<std::uint64_t>(std::floor(4.0 / step)) + 1;

    SpaceInstance space;
    space.name = "interval_m2";
    space.algebra = desc;
    space.point_dim = 1;
    space.domain_lo = {0.0};
    space.domain_hi = {4.0};
    space.sample = [step, grid_count](std::uint64_t key) {
        SplitMix64 rng(key);
        const bool on_grid = (rng.next() & 1) != 0;
        if (on_grid) {
            const double value = step * static_cast<double>(rng.next_below(grid_count));
            return Point{std::min(value, 4.0)};
        }
        return Point{rng.next_uniform(0.0, 4.0)};
    };
    space.metric = [desc](const Point& x, const Point& y, const Point& z) {
        const double value = std::max(x[0], z[0]) + std::max(y[0], z[0]);
        return AlgebraElement(desc, {value, 0.0, 0.0, value});
    };
    space.control = [desc](const Point& x, const Point& y, const Point& z) {
        const double value = 2.0 + std::max({x[0], y[0], z[0]});
        return AlgebraElement(desc, {value, 0.0, 0.0, value});
    };
    return space;
}

ContractionSpec interval_contraction(const AlgebraDescriptor& desc) {
    if (!(desc.kind == AlgebraKind::matrix && desc.dim == 2))
        throw ConfigMismatch("interval contraction is defined over 2x2 matrices");
    const double p = 1.0 / (2.0 * std::sqrt(2.0));
    ContractionSpec spec;
    spec.name = "T(x) = x / 8";
    spec.map = [](const Point& x) { return Point{x[0] / 8.0}; };
    spec.P = AlgebraElement(desc, {p, 0.0, 0.0, p});
    spec.Q = AlgebraElement::zero(desc);
    spec.R = AlgebraElement::zero(desc);
    return spec;
}

} // namespace fcm
