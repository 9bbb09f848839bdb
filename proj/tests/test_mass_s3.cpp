#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "yamabe/mass_s3.hpp"

using namespace yamabe;
namespace nb = std::numbers;

TEST_CASE("closed form pins the three regimes") {
    CHECK(mass_closed_form(0.75) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(mass_closed_form(1.0) == doctest::Approx(-1.0 / (4.0 * nb::pi * nb::pi)));
    // h0 = 0.5: nu = 1/sqrt(2), m = -nu cot(nu pi)/(4 pi)
    const double nu = std::sqrt(0.5);
    CHECK(mass_closed_form(0.5) ==
          doctest::Approx(-nu / std::tan(nu * nb::pi) / (4.0 * nb::pi)).epsilon(1e-14));
    CHECK(mass_closed_form(0.5) > 0.0);
    CHECK(mass_closed_form(2.0) < 0.0);
}

TEST_CASE("ode route agrees with the closed form across the range") {
    for (double h0 : {0.1, 0.3, 0.5, 0.74, 0.76, 1.0, 1.5, 2.5}) {
        MassResult m = s3_mass(h0);
        CHECK(std::abs(m.mass - m.mass_ode) < 1e-6 * std::max(1.0, std::abs(m.mass)));
        CHECK(m.mass == doctest::Approx(mass_closed_form(h0)).epsilon(1e-12));
        CHECK(m.leading_norm == doctest::Approx(1.0).epsilon(1e-7));
    }
}

TEST_CASE("tight dual route agreement at the quoted points") {
    for (double h0 : {0.5, 1.0}) {
        MassResult m = s3_mass(h0);
        CHECK(std::abs(m.mass - m.mass_ode) < 1e-8);
    }
    MassResult z = s3_mass(0.75);
    CHECK(std::abs(z.mass) < 1e-15);
    CHECK(std::abs(z.mass_ode) < 1e-6);
}

TEST_CASE("sign change is bracketed at 3/4 on a sweep") {
    int flips = 0;
    double prev = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double h0 = 0.1 + (1.4 - 0.1) * i / 19.0;
        const double m = s3_mass(h0).mass;
        if (i > 0 && prev * m < 0.0) {
            ++flips;
            const double a = 0.1 + (1.4 - 0.1) * (i - 1) / 19.0;
            CHECK(a < 0.75);
            CHECK(h0 > 0.75);
        }
        prev = m;
    }
    CHECK(flips == 1);
}

TEST_CASE("coercivity gate") {
    CHECK_THROWS_AS(s3_mass(0.0), Error);
    CHECK_THROWS_AS(s3_mass(-0.5), Error);
    CHECK_NOTHROW(s3_mass(-0.5, false));
}

TEST_CASE("green function values are sane") {
    // G(theta) ~ 1/(4 pi theta) near the pole, larger h0 means smaller G
    const double g1 = green_eval(0.5, 0.3), g2 = green_eval(1.5, 0.3);
    CHECK(g1 > g2);
    const double th = 1e-3;
    CHECK(green_eval(0.5, th) * 4.0 * nb::pi * th == doctest::Approx(1.0).epsilon(1e-2));
}
