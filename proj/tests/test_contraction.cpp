#include <doctest.h>

#include <cmath>

#include "fcmetric/contraction.hpp"
#include "fcmetric/examples.hpp"

using fcm::AlgebraElement;
using fcm::CheckParams;
using fcm::ContractionSpec;
using fcm::LimitParams;
using fcm::Point;
using fcm::SpaceInstance;

namespace {

struct IntervalFixture {
    SpaceInstance space;
    ContractionSpec spec;
    IntervalFixture() {
        fcm::ExampleConfig config;
        config.family = "interval_m2";
        auto bundle = fcm::build_example(config);
        space = std::move(bundle.space);
        spec = std::move(*bundle.contraction);
    }
};

CheckParams quick_params(std::int64_t n = 2000, std::uint64_t seed = 1) {
    CheckParams p;
    p.n_samples = n;
    p.seed = seed;
    return p;
}

} // namespace

TEST_SUITE("contraction") {

TEST_CASE("interval contraction satisfies the operator inequality with equality") {
    const IntervalFixture fx;
    const auto report = fcm::verify_contraction_inequality(fx.space, fx.spec, quick_params());
    CHECK(report.passed);
    CHECK(report.witnesses.empty());
    // F(Tx,Tx,Ty) = max(x,y)/4 I and P* F(x,x,y) P = max(x,y)/4 I: the two
    // sides coincide, so the worst margin is zero up to rounding.
    CHECK(std::abs(report.value("min_margin")) <= 1e-12);
    CHECK(report.value("n_violations") == 0.0);
}

TEST_CASE("identity map with a shrinking coefficient violates the inequality") {
    IntervalFixture fx;
    fx.spec.name = "T(x) = x";
    fx.spec.map = [](const Point& x) { return x; };
    fx.spec.P = fcm::scale(0.5, AlgebraElement::unit(fx.space.algebra));
    const auto report = fcm::verify_contraction_inequality(fx.space, fx.spec, quick_params(500));
    CHECK(!report.passed);
    CHECK(report.value("n_violations") > 0.0);
    CHECK(report.value("min_margin") < 0.0);
    REQUIRE(!report.witnesses.empty());
    CHECK(report.witnesses.size() <= 8);
    CHECK(report.witnesses.front().margin > 0.0);
}

TEST_CASE("coefficient norms: frozen values for the interval contraction") {
    const IntervalFixture fx;
    const auto norms = fcm::coefficient_norms(fx.spec);
    CHECK(std::abs(norms.norm_p - 1.0 / (2.0 * std::sqrt(2.0))) <= 1e-12);
    CHECK(norms.norm_q == 0.0);
    CHECK(norms.norm_r == 0.0);
    CHECK(std::abs(norms.sum_squares - 0.125) <= 1e-12);
    CHECK(std::abs(norms.s_squared - 0.125) <= 1e-12);

    const auto report = fcm::verify_coefficient_norms(fx.spec);
    CHECK(report.passed);
    CHECK(std::abs(report.value("norm_P") - norms.norm_p) <= 1e-15);
    CHECK(std::abs(report.value("sum_squares") - 0.125) <= 1e-12);
    CHECK(std::abs(report.value("S_squared") - 0.125) <= 1e-12);
}

TEST_CASE("coefficient norms fail at the boundary sum = 1") {
    IntervalFixture fx;
    fx.spec.P = AlgebraElement::unit(fx.space.algebra);
    const auto report = fcm::verify_coefficient_norms(fx.spec);
    CHECK(!report.passed);
    CHECK(std::abs(report.value("sum_squares") - 1.0) <= 1e-12);
}

TEST_CASE("computed-value lookup throws on unknown names") {
    const IntervalFixture fx;
    const auto report = fcm::verify_coefficient_norms(fx.spec);
    CHECK_THROWS_AS(report.value("no_such_value"), fcm::ConfigError);
}

TEST_CASE("orbit: exact dyadic iterates, domain escapes throw") {
    const IntervalFixture fx;
    const auto pts = fcm::orbit(fx.space, fx.spec, {4.0}, 3);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0] == Point{4.0});
    CHECK(pts[1] == Point{0.5});
    CHECK(pts[2] == Point{0.0625});
    CHECK(pts[3] == Point{0.0078125});

    CHECK_THROWS_AS(fcm::orbit(fx.space, fx.spec, {5.0}, 3), fcm::DomainEscape);

    ContractionSpec escaping = fx.spec;
    escaping.map = [](const Point& x) { return Point{x[0] + 3.0}; };
    CHECK_THROWS_AS(fcm::orbit(fx.space, escaping, {2.0}, 3), fcm::DomainEscape);
}

TEST_CASE("sup-lim condition: frozen values along the orbit of 4") {
    const IntervalFixture fx;
    const auto report = fcm::verify_suplim(fx.space, fx.spec, {4.0}, LimitParams{});
    CHECK(report.passed);
    // threshold = (1 - 0) / (||P||^2 + 0) = 8 up to the sqrt round-trip in
    // the operator norm; the inner limits are 2 * (2 + x_m), maximised at
    // m = 1 where x_1 = 1/2.
    CHECK(std::abs(report.value("threshold") - 8.0) <= 1e-12);
    CHECK(std::abs(report.value("sup_limit") - 5.0) <= 1e-9);
    CHECK(report.value("argmax_m") == 1.0);
    CHECK(report.value("i_max") == 64.0);
    CHECK(report.value("m_max") == 64.0);
}

TEST_CASE("sup-lim condition is vacuous when P = Q = 0") {
    IntervalFixture fx;
    fx.spec.P = AlgebraElement::zero(fx.space.algebra);
    const auto report = fcm::verify_suplim(fx.space, fx.spec, {4.0}, LimitParams{});
    CHECK(report.passed);
    CHECK(std::isinf(report.value("threshold")));
    CHECK(std::abs(report.value("sup_limit") - 5.0) <= 1e-9);
}

TEST_CASE("oscillating orbits are rejected, not averaged") {
    IntervalFixture fx;
    fx.spec.name = "T(x) = 4 - x";
    fx.spec.map = [](const Point& x) { return Point{4.0 - x[0]}; };
    // Orbit 1, 3, 1, 3, ...: the inner sequence at m = 2 alternates between
    // 25 and 15, so no limit exists.
    CHECK_THROWS_AS(fcm::verify_suplim(fx.space, fx.spec, {1.0}, LimitParams{}),
                    fcm::TailNotConverged);
    CHECK_THROWS_AS(
        fcm::verify_control_limits(fx.space, fx.spec, {1.0}, {Point{0.0}}, LimitParams{}),
        fcm::TailNotConverged);
}

TEST_CASE("control limits: frozen values at probe 4") {
    const IntervalFixture fx;
    const auto report =
        fcm::verify_control_limits(fx.space, fx.spec, {4.0}, {Point{4.0}, Point{0.0}}, LimitParams{});
    CHECK(report.passed);
    // ||C(x_n, x_n, 4)|| -> 2 + max(0, 4) = 6, and symmetrically for c.
    CHECK(std::abs(report.value("b_limit_0") - 6.0) <= 1e-9);
    CHECK(std::abs(report.value("c_limit_0") - 6.0) <= 1e-9);
    // At probe 0 both collapse to 2 + max(x_n, 0) -> 2.
    CHECK(std::abs(report.value("b_limit_1") - 2.0) <= 1e-9);
    CHECK(std::abs(report.value("c_limit_1") - 2.0) <= 1e-9);

    CHECK_THROWS_AS(fcm::verify_control_limits(fx.space, fx.spec, {4.0}, {}, LimitParams{}),
                    fcm::EmptySample);
}

TEST_CASE("map closure: the interval contraction stays inside, shifts escape") {
    const IntervalFixture fx;
    CHECK(fcm::validate_map_closure(fx.space, fx.spec, quick_params(500)).passed);

    ContractionSpec shifted = fx.spec;
    shifted.map = [](const Point& x) { return Point{x[0] + 1.5}; };
    const auto report = fcm::validate_map_closure(fx.space, shifted, quick_params(500));
    CHECK(!report.passed);
    REQUIRE(!report.witnesses.empty());
    const fcm::Witness& w = report.witnesses.front();
    // margin records the escape distance x + 1.5 - 4.
    CHECK(std::abs(w.margin - (w.points[0][0] + 1.5 - 4.0)) <= 1e-12);
}

TEST_CASE("hypothesis scans reject empty sample counts and foreign coefficients") {
    const IntervalFixture fx;
    CHECK_THROWS_AS(fcm::verify_contraction_inequality(fx.space, fx.spec, quick_params(0)),
                    fcm::EmptySample);
    CHECK_THROWS_AS(fcm::validate_map_closure(fx.space, fx.spec, quick_params(0)),
                    fcm::EmptySample);

    ContractionSpec foreign = fx.spec;
    foreign.P = AlgebraElement(fcm::AlgebraDescriptor{fcm::AlgebraKind::componentwise, 2},
                               {0.5, 0.5});
    CHECK_THROWS_AS(fcm::verify_contraction_inequality(fx.space, foreign, quick_params(10)),
                    fcm::DescriptorMismatch);
    CHECK_THROWS_AS(fcm::verify_suplim(fx.space, foreign, {4.0}, LimitParams{}),
                    fcm::DescriptorMismatch);
}

} // TEST_SUITE("contraction")
