#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "yamabe/ding.hpp"
#include "yamabe/pohozaev.hpp"
#include "yamabe/profile.hpp"

using namespace yamabe;
namespace nb = std::numbers;

TEST_CASE("exact bubble balances at the critical exponent") {
    ProfilePtr v = standard_bubble(5, 0.9);
    for (double delta : {0.5, 1.0, 2.0}) {
        PohozaevReport rep = pohozaev_terms(v, v->critical_exponent(), 0.0, delta);
        const double norm = std::max(1.0, std::abs(rep.boundary));
        CHECK(std::abs(rep.defect) / norm < 1e-8);
        // at pexp = 2* the subcritical volume term vanishes identically
        CHECK(std::abs(rep.volume_subcritical) < 1e-12);
    }
}

TEST_CASE("subcritical exponent and potential terms enter with the right sign") {
    ProfilePtr v = standard_bubble(4);
    PohozaevReport rep = pohozaev_terms(v, 2.8, 0.0, 1.0);  // 2* = 4 here, 2.8 is subcritical
    CHECK(rep.volume_subcritical > 0.0);
    // the bubble does not solve the h0 != 0 equation, so the defect is honest
    // and must equal the reported imbalance
    PohozaevReport rep2 = pohozaev_terms(v, 4.0, 0.3, 1.0);
    CHECK(rep2.volume_potential != 0.0);
    CHECK(rep2.defect == doctest::Approx(rep2.boundary - rep2.volume_subcritical -
                                         rep2.volume_potential)
                             .epsilon(1e-12));
    CHECK(std::abs(rep2.defect) > 1e-3);
}

TEST_CASE("ding pullback balances to the interpolation floor") {
    auto sols = find_solutions(2, 3, 1);
    ProfilePtr v = pullback(sols[1]);
    PohozaevReport rep = pohozaev_terms(v, v->critical_exponent(), 0.0, 1.0);
    CHECK(std::abs(rep.defect) / std::max(1.0, std::abs(rep.boundary)) < 1e-5);
}

TEST_CASE("boundary functional extracts -m/2 exactly for a pure expansion") {
    const double m = 0.042833835952;
    Field3 g = [&](const std::vector<double>& x, double& val, std::vector<double>& grad) {
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        val = 1.0 / (4.0 * nb::pi * r) + m;
        const double c = -1.0 / (4.0 * nb::pi * r * r * r);
        grad = {c * x[0], c * x[1], c * x[2]};
    };
    for (double delta : {0.05, 0.1, 0.3, 0.6, 1.0}) {
        CHECK(mass_boundary_functional(g, delta) == doctest::Approx(-0.5 * m).epsilon(1e-10));
    }
}

TEST_CASE("quadratic remainder contributes at order delta") {
    const double m = -0.025330295911;
    Field3 g = [&](const std::vector<double>& x, double& val, std::vector<double>& grad) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        const double r = std::sqrt(r2);
        val = 1.0 / (4.0 * nb::pi * r) + m + r2;
        const double c = -1.0 / (4.0 * nb::pi * r * r * r);
        grad = {c * x[0] + 2.0 * x[0], c * x[1] + 2.0 * x[1], c * x[2] + 2.0 * x[2]};
    };
    double prev_err = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double delta = 0.2 / std::pow(2.0, k);
        const double err = std::abs(mass_boundary_functional(g, delta) + 0.5 * m);
        if (k > 0) CHECK(err < 0.6 * prev_err);  // at least first order in delta
        prev_err = err;
    }
}
