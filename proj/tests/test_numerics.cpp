#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <numbers>

#include "yamabe/dual.hpp"
#include "yamabe/numerics.hpp"

using namespace yamabe;
namespace nb = std::numbers;

TEST_CASE("sphere area matches closed forms") {
    CHECK(sphere_area(1) == doctest::Approx(2.0 * nb::pi));
    CHECK(sphere_area(2) == doctest::Approx(4.0 * nb::pi));
    CHECK(sphere_area(3) == doctest::Approx(2.0 * nb::pi * nb::pi));
    CHECK(sphere_area(4) == doctest::Approx(8.0 * nb::pi * nb::pi / 3.0));
    CHECK(sphere_area(6) == doctest::Approx(16.0 * std::pow(nb::pi, 3) / 15.0));
}

TEST_CASE("gauss rule integrates polynomials exactly") {
    GaussRule g = gauss_legendre(8);
    double s = 0.0;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        const double x = g.nodes[i];
        s += g.weights[i] * (5.0 * x * x * x * x - 3.0 * x * x + 1.0);
    }
    // int_{-1}^1 = 2 - 2 + 2 = 2
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("adaptive 1d handles algebraic endpoint behavior") {
    QuadratureSpec spec;
    const double v = integrate_1d_value([](double x) { return std::sqrt(x); }, 0.0, 1.0, spec);
    CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("radial integral of gaussian reproduces pi^{n/2}") {
    for (int n : {3, 4, 5, 7}) {
        QuadratureSpec spec;
        const QuadResult r =
            integrate_radial_rn([](double rr) { return std::exp(-rr * rr); }, n, spec);
        CHECK(r.value == doctest::Approx(std::pow(nb::pi, n / 2.0)).epsilon(1e-9));
    }
}

TEST_CASE("biradial gaussian agrees with the radial route") {
    for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 4}}) {
        QuadratureSpec spec;
        const int n = p + q;
        const QuadResult a = integrate_biradial(
            [](double r1, double r2) { return std::exp(-(r1 * r1 + r2 * r2)); }, p, q, spec);
        CHECK(a.value == doctest::Approx(std::pow(nb::pi, n / 2.0)).epsilon(1e-9));
    }
}

TEST_CASE("non-integrable tails are refused, not silently truncated") {
    QuadratureSpec spec;
    CHECK_THROWS_AS(integrate_radial_rn([](double r) { return 1.0 / (1.0 + r * r); }, 5, spec),
                    Error);
}

TEST_CASE("ivp solver reproduces the harmonic oscillator") {
    OdeSpec spec;
    auto rhs = [](double, const double* y, double* dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    Trajectory tr = solve_ivp(rhs, 0.0, {1.0, 0.0}, 2.0 * nb::pi, spec);
    std::vector<double> y = tr.eval(2.0 * nb::pi);
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(y[1]) < 1e-8);
    y = tr.eval(nb::pi / 3.0);
    CHECK(y[0] == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("bracketed root finder") {
    const double r = find_root_bracketed([](double x) { return x * x * x - 2.0; }, 1.0, 2.0, 1e-14);
    CHECK(r == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-14),
                    Error);
}

TEST_CASE("counter rng is reproducible and seed sensitive") {
    CounterRng a(1234, 7), b(1234, 7), c(99, 7);
    double sa[64], sb[64], sc[64];
    for (int i = 0; i < 64; ++i) {
        sa[i] = a.uniform(i);
        sb[i] = b.uniform(i);
        sc[i] = c.uniform(i);
    }
    CHECK(std::memcmp(sa, sb, sizeof sa) == 0);
    CHECK(std::memcmp(sa, sc, sizeof sa) != 0);
    double mean = 0.0;
    CounterRng g(77, 1);
    for (int i = 0; i < 20000; ++i) mean += g.normal(i);
    mean /= 20000.0;
    CHECK(std::abs(mean) < 0.03);
}

TEST_CASE("neville extrapolation kills the leading power") {
    // f(h) = 3 + 2 h^2 + h^4 sampled on a halving ladder
    std::vector<double> hs, fs;
    for (int j = 0; j < 6; ++j) {
        const double h = 0.4 / std::pow(2.0, j);
        hs.push_back(h * h);
        fs.push_back(3.0 + 2.0 * h * h + h * h * h * h);
    }
    CHECK(neville_extrapolate(hs, fs) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("second order duals differentiate composite expressions") {
    // f(x, y) = atan2(sqrt(x^2 + y^2), 1 + x y) at (0.7, -0.3)
    const double x0 = 0.7, y0 = -0.3;
    const Dual2 x = Dual2::var1(x0), y = Dual2::var2(y0);
    const Dual2 f = atan2(sqrt(x * x + y * y), 1.0 + x * y);
    auto fv = [](double a, double b) {
        return std::atan2(std::hypot(a, b), 1.0 + a * b);
    };
    const double h = 1e-5;
    CHECK(f.v == doctest::Approx(fv(x0, y0)).epsilon(1e-14));
    CHECK(f.d1 == doctest::Approx((fv(x0 + h, y0) - fv(x0 - h, y0)) / (2 * h)).epsilon(1e-8));
    CHECK(f.d2 == doctest::Approx((fv(x0, y0 + h) - fv(x0, y0 - h)) / (2 * h)).epsilon(1e-8));
    CHECK(f.d11 ==
          doctest::Approx((fv(x0 + h, y0) - 2 * f.v + fv(x0 - h, y0)) / (h * h)).epsilon(1e-4));
    CHECK(f.d12 == doctest::Approx((fv(x0 + h, y0 + h) - fv(x0 + h, y0 - h) - fv(x0 - h, y0 + h) +
                                    fv(x0 - h, y0 - h)) /
                                   (4 * h * h))
                       .epsilon(1e-4));
}
