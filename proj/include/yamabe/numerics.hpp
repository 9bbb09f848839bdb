#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace yamabe {

enum class ErrorCode {
    invalid_argument,
    budget_exhausted,
    non_integrable,
    no_sign_change,
    non_convergent,
    inconsistent_routes,
    non_coercive,
    dimension_error,
    io_error,
};

struct Error : std::runtime_error {
    ErrorCode code;
    Error(ErrorCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

enum class QuadRule { adaptive_1d, tensor_2d, compactified_2d, montecarlo };

struct QuadratureSpec {
    QuadRule rule = QuadRule::adaptive_1d;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::size_t max_evals = 20'000'000;
    std::uint64_t seed = 0;  // montecarlo only
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evals = 0;
    double tail_bound = 0.0;  // improper integrals: last dyadic shell contribution
};

struct OdeSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.0;  // 0 = unlimited
    double blowup_cap = 1e8;
    double endpoint_series_radius = 1e-2;
};

// Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration on
// the Legendre polynomial to machine precision.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int npts);

double sphere_area(int dim_sphere);  // area of unit S^d = 2 pi^{(d+1)/2} / Gamma((d+1)/2)

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

// Adaptive 1-D quadrature of f on a finite interval [a,b].
QuadResult integrate_1d(const Fn1& f, double a, double b, const QuadratureSpec& spec = {});
inline double integrate_1d_value(const Fn1& f, double a, double b, const QuadratureSpec& spec = {}) {
    return integrate_1d(f, a, b, spec).value;
}

// int_{R^n} f(|x|) dx = omega_{n-1} int_0^inf f(r) r^{n-1} dr, with the
// half-line compactified through s = r/(1+r). Detects non-integrable tails.
QuadResult integrate_radial_rn(const Fn1& f, int n, const QuadratureSpec& spec = {});

// int_{R^n} F dx for O(p)xO(q)-invariant F = f(|x'|, |x''|):
// omega_{p-1} omega_{q-1} iint f(r1,r2) r1^{p-1} r2^{q-1} dr1 dr2.
QuadResult integrate_biradial(const Fn2& f, int p, int q, const QuadratureSpec& spec = {});

// Weighted 2-D integral over [0,inf)^2 without the sphere prefactors.
QuadResult integrate_2d_halfplane(const Fn2& g, const QuadratureSpec& spec = {});

// Dense ODE trajectory from an embedded RK45 (Dormand-Prince) solve.
class Trajectory {
  public:
    struct Step {
        double t;
        std::vector<double> y;
        std::vector<double> dy;
    };

    double t0() const { return steps_.front().t; }
    double t1() const { return steps_.back().t; }
    const std::vector<Step>& steps() const { return steps_; }
    // Cubic Hermite dense evaluation
    std::vector<double> eval(double t) const;
    std::vector<double> eval_derivative(double t) const;
    bool blew_up = false;

  private:
    friend Trajectory solve_ivp(const std::function<void(double, const double*, double*)>&, double,
                                std::vector<double>, double, const OdeSpec&);
    std::vector<Step> steps_;
};

Trajectory solve_ivp(const std::function<void(double, const double*, double*)>& rhs, double t0,
                     std::vector<double> y0, double t1, const OdeSpec& spec = {});

// Bracketed root finding (bisection with secant acceleration).
double find_root_bracketed(const Fn1& f, double lo, double hi, double tol);

// Counter-based deterministic generator: stateless, reproducible streams.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}
    double uniform(std::uint64_t counter) const;           // in (0,1)
    double normal(std::uint64_t counter) const;            // standard normal
  private:
    std::uint64_t seed_, stream_;
};

// Richardson/Neville extrapolation of g(x_i) -> x=0 given nodes x_i.
double neville_extrapolate(const std::vector<double>& x, const std::vector<double>& g);

}  // namespace yamabe
