#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "yamabe/ding.hpp"
#include "yamabe/profile.hpp"

using namespace yamabe;

TEST_CASE("closed form bubble round trips") {
    ProfilePtr v = standard_bubble(5, 0.37, -1);
    ProfilePtr back = profile_from_json(profile_to_json(v));
    CHECK(back->n() == 5);
    for (double r : {0.1, 1.0, 6.0})
        CHECK(back->jet(r, 0.0).v == doctest::Approx(v->jet(r, 0.0).v).epsilon(1e-14));
}

TEST_CASE("biradial solution round trips through the latitude samples") {
    auto sols = find_solutions(2, 3, 1);
    ProfilePtr v = pullback(sols[1]);
    const std::string doc = profile_to_json(v);
    CHECK(doc.find("\"schema_version\"") != std::string::npos);
    ProfilePtr back = profile_from_json(doc);
    CHECK(!back->radial());
    for (double r1 : {0.2, 1.0, 2.4})
        for (double r2 : {0.1, 0.8, 3.0})
            CHECK(back->jet(r1, r2).v == doctest::Approx(v->jet(r1, r2).v).epsilon(1e-12));
}

TEST_CASE("numeric radial grids round trip") {
    std::vector<double> r, val, dval;
    for (int i = 0; i <= 400; ++i) {
        const double x = 1e-3 * std::pow(2e4, i / 400.0);
        r.push_back(x);
        val.push_back(1.0 / (1.0 + x * x));
        dval.push_back(-2.0 * x / ((1.0 + x * x) * (1.0 + x * x)));
    }
    ProfilePtr v = std::make_shared<NumericRadialProfile>(3, r, val, dval, "unit-test");
    ProfilePtr back = profile_from_json(profile_to_json(v));
    CHECK(back->generator() == "unit-test");
    CHECK(back->jet(2.0, 0.0).v == doctest::Approx(0.2).epsilon(1e-10));
}

TEST_CASE("wrapped profiles refuse serialization with a clear message") {
    ProfilePtr v = kelvin(standard_bubble(5));
    CHECK_THROWS_AS(profile_to_json(v), Error);
}

TEST_CASE("malformed documents are refused") {
    CHECK_THROWS_AS(profile_from_json("{"), Error);
    CHECK_THROWS_AS(profile_from_json("{\"schema_version\":1}"), Error);
    CHECK_THROWS_AS(profile_from_json("{\"schema_version\":99,\"kind\":\"closed_form_standard\"}"),
                    Error);
    // grid length mismatch
    CHECK_THROWS_AS(
        profile_from_json("{\"schema_version\":1,\"kind\":\"numeric_radial\",\"n\":3,"
                          "\"generator\":\"x\",\"r\":[1,2,3],\"v\":[1,2],\"dv\":[0,0,0]}"),
        Error);
}
