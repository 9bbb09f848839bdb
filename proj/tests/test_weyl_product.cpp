#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "yamabe/ding.hpp"
#include "yamabe/profile.hpp"
#include "yamabe/weyl_product.hpp"

using namespace yamabe;

TEST_CASE("radial bubble pairs to zero against the product sphere weyl") {
    WeylProductResult r = weyl_otimes_b(standard_bubble(5), 2, 3);
    CHECK(std::abs(r.value) < 1e-8);
    CHECK(std::abs(r.gradient_route) < 1e-8);
    CHECK(std::abs(r.hessian_route) < 1e-8);
    CHECK(std::abs(r.reduced_route) < 1e-8);
    // the same cancellation holds pointwise for the diagonal blocks
    CHECK(r.block_cancellation < 1e-8);
}

TEST_CASE("one node ding profile pairs strictly negatively") {
    auto sols = find_solutions(2, 3, 1);
    ProfilePtr v = pullback(sols[1]);
    WeylProductResult r = weyl_otimes_b(v, 2, 3);
    CHECK(r.value < -1e-3);
    CHECK(r.gradient_route == doctest::Approx(r.reduced_route).epsilon(1e-3));
    CHECK(r.gradient_route == doctest::Approx(r.hessian_route).epsilon(1e-3));
    CHECK(r.reduced_route <= 0.0);  // manifestly a negative square
}

TEST_CASE("monte carlo route agrees within three standard errors") {
    auto sols = find_solutions(2, 3, 1);
    ProfilePtr v = pullback(sols[1]);
    WeylProductOptions opt;
    opt.with_montecarlo = true;
    opt.seed = 20240817;
    opt.mc_samples = 200000;
    WeylProductResult r = weyl_otimes_b(v, 2, 3, opt);
    REQUIRE(r.montecarlo.has_value());
    CHECK(std::abs(*r.montecarlo - r.value) < 3.0 * r.montecarlo_stderr);
    CHECK(r.montecarlo_stderr < 0.05 * std::abs(r.value));
}

TEST_CASE("scaling covariance: value goes like mu^2") {
    auto sols = find_solutions(2, 3, 1);
    ProfilePtr v = pullback(sols[1]);
    const double base = weyl_otimes_b(v, 2, 3).value;
    for (double mu : {0.5, 2.0}) {
        const double scaled = weyl_otimes_b(rescaled(v, mu), 2, 3).value;
        CHECK(scaled == doctest::Approx(mu * mu * base).epsilon(1e-5));
    }
}

TEST_CASE("dimension and split gates") {
    CHECK_THROWS_AS(weyl_otimes_b(standard_bubble(4), 2, 2), Error);   // n < 5
    CHECK_THROWS_AS(weyl_otimes_b(standard_bubble(5), 1, 4), Error);   // p < 2
    CHECK_THROWS_AS(weyl_otimes_b(standard_bubble(6), 2, 3), Error);   // split mismatch
    auto sols = find_solutions(2, 3, 0);
    CHECK_THROWS_AS(weyl_otimes_b(pullback(sols[0]), 3, 2), Error);    // tied to (2,3)
}
