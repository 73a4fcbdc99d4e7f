#include "doctest.h"

#include <cmath>

#include "helpers.hpp"

using namespace perturbed;
using namespace test_helpers;

namespace {

PerturbedSpace quarter_space() {
    return make_space("2 * abs(x - y)", "2", Mode::Quotient, 2.0, {-1.0}, {1.0});
}

ContractionCertificate quarter_cert(const PerturbedSpace& space, const SelfMap& map) {
    return estimate_coefficient(space, map, CertKind::Kannan, 10'000, 42);
}

}  // namespace

TEST_CASE("beta") {
    CHECK(beta(1.0 / 3.0) == doctest::Approx(0.5));
    CHECK(beta(0.0) == 0.0);
    CHECK(beta(0.49) == doctest::Approx(0.49 / 0.51));
    CHECK_THROWS_AS(beta(0.5), AlphaOutOfRange);
    CHECK_THROWS_AS(beta(-0.1), AlphaOutOfRange);
}

TEST_CASE("a-priori bound") {
    CHECK(apriori_bound(3, 0.5, 2.0, 2.0) == doctest::Approx(0.25));
    CHECK(apriori_bound(0, 0.5, 2.0, 2.0) == doctest::Approx(2.0));
    CHECK(apriori_bound(7, 0.5, 0.0, 2.0) == 0.0);
    CHECK_THROWS_AS(apriori_bound(1, 1.0, 1.0, 1.0), BetaOutOfRange);
    CHECK_THROWS_AS(apriori_bound(1, 0.5, 1.0, 0.0), NonPositiveFloor);
}

TEST_CASE("a-posteriori bound") {
    CHECK(aposteriori_bound(0.0, 0.5, 1.0) == 0.0);
    CHECK(aposteriori_bound(1.0, 0.5, 1.0) == doctest::Approx(1.0));
    CHECK(aposteriori_bound(0.25, 0.5, 2.0) == doctest::Approx(0.125));  // (0.5*0.25)/(0.5*2)
    CHECK_THROWS_AS(aposteriori_bound(1.0, -0.1, 1.0), BetaOutOfRange);
    CHECK_THROWS_AS(aposteriori_bound(1.0, 0.5, -1.0), NonPositiveFloor);
}

TEST_CASE("quarter map converges with the closed-form iterates") {
    const auto space = quarter_space();
    const auto map = make_map("x / 4");
    const auto cert = quarter_cert(space, map);
    REQUIRE(cert.valid);

    const IterationTrace trace = solve(space, map, cert, pt(1.0), 1e-9, 100);
    CHECK(trace.stop_reason == StopReason::Converged);
    CHECK(trace.steps.size() <= 20);
    REQUIRE(trace.fixed_point.has_value());
    CHECK(std::abs(trace.fixed_point->coords[0]) <= 1e-9);
    CHECK(trace.residual <= 1e-9 + kTauNum);

    // x_n = 4^-n exactly in double arithmetic
    for (const auto& step : trace.steps) {
        CHECK(std::abs(step.x.coords[0] - std::pow(0.25, static_cast<double>(step.n))) <= 1e-12);
    }
}

TEST_CASE("trace invariants under a valid Kannan certificate") {
    const auto space = quarter_space();
    const auto map = make_map("x / 4");
    const auto cert = quarter_cert(space, map);
    const IterationTrace trace = solve(space, map, cert, pt(1.0), 1e-9, 100);
    REQUIRE(trace.stop_reason == StopReason::Converged);

    const double rate = cert.rate();
    const double d0 = trace.steps.front().raw_gap;
    double prev_apriori = std::numeric_limits<double>::infinity();
    double prev_aposteriori = std::numeric_limits<double>::infinity();
    for (const auto& step : trace.steps) {
        const double geometric = std::pow(rate, static_cast<double>(step.n)) * d0;
        CHECK(step.raw_gap <= geometric + kTauNum);                 // step-bound domination
        CHECK(step.exact_gap <= geometric / space.c + kTauNum);     // exact-gap bound
        CHECK(step.apriori <= prev_apriori + kTauNum);
        CHECK(step.aposteriori <= prev_aposteriori + kTauNum);
        prev_apriori = step.apriori;
        prev_aposteriori = step.aposteriori;
    }

    // tail-bound soundness: d(x_n, x_final) <= apriori(n), replayed
    const SpaceElement final_x = *trace.fixed_point;
    for (const auto& step : trace.steps) {
        CHECK(exact_distance(space, step.x, final_x) <= step.apriori + kTauNum);
    }
    // a-posteriori soundness: the bound at step n dominates d(x_{n+1}, x_final)
    for (std::size_t i = 0; i + 1 < trace.steps.size(); ++i) {
        CHECK(exact_distance(space, trace.steps[i + 1].x, final_x) <=
              trace.steps[i].aposteriori + kTauNum);
    }
}

TEST_CASE("a starting point that is already fixed converges at step 0") {
    const auto space = quarter_space();
    const auto map = make_map("x / 4");
    const auto cert = quarter_cert(space, map);
    const IterationTrace trace = solve(space, map, cert, pt(0.0), 1e-9, 100);
    CHECK(trace.stop_reason == StopReason::Converged);
    CHECK(trace.steps.size() == 1);
    REQUIRE(trace.fixed_point.has_value());
    CHECK(trace.fixed_point->coords[0] == 0.0);
}

TEST_CASE("banach path obeys the alpha^n chain") {
    const auto space = quarter_space();
    const auto map = make_map("x / 2");
    const auto cert = estimate_coefficient(space, map, CertKind::Banach, 10'000, 42);
    REQUIRE(cert.valid);
    const IterationTrace trace = solve(space, map, cert, pt(1.0), 1e-9, 100);
    CHECK(trace.stop_reason == StopReason::Converged);
    const double d0 = trace.steps.front().raw_gap;
    for (const auto& step : trace.steps) {
        CHECK(step.raw_gap <=
              std::pow(cert.alpha_bound, static_cast<double>(step.n)) * d0 + kTauNum);
    }
    CHECK(std::abs(trace.fixed_point->coords[0]) <= 1e-9);
}

TEST_CASE("solver error paths") {
    const auto space = quarter_space();
    const auto map = make_map("x / 4");
    auto cert = quarter_cert(space, map);

    SUBCASE("invalid certificate") {
        cert.valid = false;
        CHECK_THROWS_AS(solve(space, map, cert, pt(1.0), 1e-9, 100), InvalidCertificate);
    }
    SUBCASE("starting point outside the box") {
        CHECK_THROWS_AS(solve(space, map, cert, pt(2.0), 1e-9, 100), LeftDomain);
    }
    SUBCASE("estimated floor is refused for bounds") {
        auto untrusted = space;
        untrusted.c_estimated = true;
        CHECK_THROWS_AS(solve(untrusted, map, cert, pt(1.0), 1e-9, 100), InvalidCertificate);
    }
    SUBCASE("subtractive spaces emit no bounds") {
        auto sub = make_space("abs(x - y) + 1", "1", Mode::Subtractive, 0.0, {-1.0}, {1.0});
        CHECK_THROWS_AS(solve(sub, map, cert, pt(1.0), 1e-9, 100), InvalidCertificate);
    }
    SUBCASE("iteration budget exhausted") {
        const IterationTrace trace = solve(space, map, cert, pt(1.0), 1e-9, 3);
        CHECK(trace.stop_reason == StopReason::MaxIter);
        CHECK_FALSE(trace.fixed_point.has_value());
    }
}

TEST_CASE("iterates escaping the box stop the trace") {
    const auto space = make_space("2 * abs(x - y)", "2", Mode::Quotient, 2.0, {0.0}, {1.0});
    const auto map = make_map("x + 0.4");  // leaves [0,1] after a few steps
    ContractionCertificate cert;
    cert.kind = CertKind::Kannan;
    cert.alpha_hat = 0.2;
    cert.alpha_bound = 0.2;
    cert.beta = 0.25;
    cert.valid = true;
    const IterationTrace trace = solve(space, map, cert, pt(0.0), 1e-9, 100);
    CHECK(trace.stop_reason == StopReason::LeftDomain);
}

TEST_CASE("a wrong certificate is caught as bound blowup") {
    const auto space = quarter_space();
    const auto map = make_map("x / 2");  // true step rate 1/2
    ContractionCertificate lie;
    lie.kind = CertKind::Kannan;
    lie.alpha_hat = 0.1;
    lie.alpha_bound = 0.1;
    lie.beta = 0.1 / 0.9;  // claims D_{n+1} <= 0.111 D_n, which x/2 breaks
    lie.valid = true;
    const IterationTrace trace = solve(space, map, lie, pt(1.0), 1e-12, 1'000);
    CHECK(trace.stop_reason == StopReason::BoundBlowup);
}

TEST_CASE("uniqueness merging") {
    const auto space = quarter_space();
    const auto map = make_map("x / 4");
    auto cert = quarter_cert(space, map);
    auto eq = space;
    eq.eq_tol = 1e-9;

    SUBCASE("near-duplicates merge to one representative") {
        const auto result = verify_uniqueness(eq, cert, {pt(0.0), pt(1e-13)});
        CHECK(result.representatives.size() == 1);
        CHECK_FALSE(result.violation);
    }
    SUBCASE("a single candidate is its own representative") {
        const auto result = verify_uniqueness(eq, cert, {pt(0.25)});
        REQUIRE(result.representatives.size() == 1);
        CHECK(result.representatives.front() == pt(0.25));
        CHECK_FALSE(result.violation);
    }
    SUBCASE("distinct fixed points under a claimed-valid certificate are flagged") {
        // crafted: two genuine fixed points with a deliberately bogus certificate
        const auto result = verify_uniqueness(eq, cert, {pt(0.0), pt(1.0)});
        CHECK(result.representatives.size() == 2);
        CHECK(result.violation);
    }
}

TEST_CASE("discontinuous Kannan map converges to the oracle fixed point") {
    const auto space = make_space("2 * abs(x - y)", "2", Mode::Quotient, 2.0, {0.0}, {1.0});
    const auto map = make_map("if_lt(x, 0.5, x / 4, x / 5)");
    const auto cert = estimate_coefficient(space, map, CertKind::Kannan, 10'000, 42);
    REQUIRE(cert.valid);
    const IterationTrace trace = solve(space, map, cert, pt(0.9), 1e-9, 1'000);
    REQUIRE(trace.stop_reason == StopReason::Converged);

    const auto oracle_points = brute_force_fixed_points(space, map, 1e-6);
    REQUIRE_FALSE(oracle_points.empty());
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : oracle_points) {
        best = std::min(best, std::abs(p.coords[0] - trace.fixed_point->coords[0]));
    }
    CHECK(best <= 1e-6 + 1e-9);
}
