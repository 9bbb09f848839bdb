#include "yamabe/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace yamabe {

const GaussRule& gauss_legendre(int npts) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(npts);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(npts);
    rule.weights.resize(npts);
    const int m = (npts + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (npts + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= npts; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = npts * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[npts - 1 - i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[npts - 1 - i] = rule.weights[i];
    }
    auto [pos, inserted] = cache.emplace(npts, std::move(rule));
    (void)inserted;
    return pos->second;
}

double sphere_area(int d) {
    if (d < 0) throw Error(ErrorCode::invalid_argument, "sphere dimension must be >= 0");
    const double half = (d + 1) / 2.0;
    return 2.0 * std::pow(M_PI, half) / std::tgamma(half);
}

namespace {

struct Budget {
    std::size_t left;
    void spend(std::size_t k) {
        if (k > left) throw Error(ErrorCode::budget_exhausted, "quadrature evaluation budget exhausted");
        left -= k;
    }
};

double gauss_panel(const Fn1& f, double a, double b, const GaussRule& g) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(c + h * g.nodes[i]);
    return s * h;
}

void adapt_1d(const Fn1& f, double a, double b, double whole, double tol, const GaussRule& g, int depth,
              Budget& budget, double& acc, double& err) {
    const double m = 0.5 * (a + b);
    budget.spend(2 * g.nodes.size());
    const double left = gauss_panel(f, a, m, g);
    const double right = gauss_panel(f, m, b, g);
    const double diff = left + right - whole;
    if (std::abs(diff) <= tol || depth >= 48) {
        acc += left + right;
        err += std::abs(diff);
        return;
    }
    adapt_1d(f, a, m, left, 0.5 * tol, g, depth + 1, budget, acc, err);
    adapt_1d(f, m, b, right, 0.5 * tol, g, depth + 1, budget, acc, err);
}

}  // namespace

QuadResult integrate_1d(const Fn1& f, double a, double b, const QuadratureSpec& spec) {
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
        throw Error(ErrorCode::invalid_argument, "tolerances must be positive");
    const GaussRule& g = gauss_legendre(15);
    Budget budget{spec.max_evals};
    budget.spend(g.nodes.size());
    const double whole = gauss_panel(f, a, b, g);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(whole));
    QuadResult res;
    adapt_1d(f, a, b, whole, tol, g, 0, budget, res.value, res.error_estimate);
    res.evals = spec.max_evals - budget.left;
    return res;
}

QuadResult integrate_radial_rn(const Fn1& f, int n, const QuadratureSpec& spec) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "dimension must be >= 1");
    const auto weighted = [&](double r) { return f(r) * std::pow(r, n - 1); };

    // Divergence detector: dyadic shell contributions must eventually decay.
    {
        QuadratureSpec coarse = spec;
        coarse.rel_tol = 1e-6;
        coarse.abs_tol = 1e-9;
        double prev = 0.0;
        int growing = 0;
        double lo = 32.0;
        for (int k = 0; k < 12; ++k) {
            const double shell = std::abs(integrate_1d(weighted, lo, 2.0 * lo, coarse).value);
            if (k > 0 && shell > 0.7 * prev && shell > 1e-10) {
                if (++growing >= 4)
                    throw Error(ErrorCode::non_integrable, "radial integrand has a non-integrable tail");
            }
            prev = shell;
            lo *= 2.0;
        }
    }

    // Compactify with s = r/(1+r); dr = ds/(1-s)^2.
    const auto mapped = [&](double s) {
        const double r = s / (1.0 - s);
        return weighted(r) / ((1.0 - s) * (1.0 - s));
    };
    QuadResult res = integrate_1d(mapped, 0.0, 1.0 - 1e-14, spec);
    res.value *= sphere_area(n - 1);
    res.error_estimate *= sphere_area(n - 1);
    QuadratureSpec coarse = spec;
    coarse.rel_tol = 1e-6;
    coarse.abs_tol = 1e-12;
    res.tail_bound = sphere_area(n - 1) * std::abs(integrate_1d(weighted, 1e4, 2e4, coarse).value);
    return res;
}

namespace {

double gauss_cell(const Fn2& f, double ax, double bx, double ay, double by, const GaussRule& g) {
    const double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
    const double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        double row = 0.0;
        const double x = cx + hx * g.nodes[i];
        for (std::size_t j = 0; j < g.nodes.size(); ++j) row += g.weights[j] * f(x, cy + hy * g.nodes[j]);
        s += g.weights[i] * row;
    }
    return s * hx * hy;
}

void adapt_2d(const Fn2& f, double ax, double bx, double ay, double by, double whole, double tol,
              const GaussRule& g, int depth, Budget& budget, double& acc, double& err) {
    const double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
    budget.spend(4 * g.nodes.size() * g.nodes.size());
    const double q00 = gauss_cell(f, ax, mx, ay, my, g);
    const double q10 = gauss_cell(f, mx, bx, ay, my, g);
    const double q01 = gauss_cell(f, ax, mx, my, by, g);
    const double q11 = gauss_cell(f, mx, bx, my, by, g);
    const double refined = q00 + q10 + q01 + q11;
    const double diff = refined - whole;
    if (std::abs(diff) <= tol || depth >= 24) {
        acc += refined;
        err += std::abs(diff);
        return;
    }
    adapt_2d(f, ax, mx, ay, my, q00, 0.25 * tol, g, depth + 1, budget, acc, err);
    adapt_2d(f, mx, bx, ay, my, q10, 0.25 * tol, g, depth + 1, budget, acc, err);
    adapt_2d(f, ax, mx, my, by, q01, 0.25 * tol, g, depth + 1, budget, acc, err);
    adapt_2d(f, mx, bx, my, by, q11, 0.25 * tol, g, depth + 1, budget, acc, err);
}

}  // namespace

QuadResult integrate_2d_halfplane(const Fn2& g2, const QuadratureSpec& spec) {
    // Compactify both axes with s = r/(1+r).
    const auto mapped = [&](double s1, double s2) {
        const double r1 = s1 / (1.0 - s1), r2 = s2 / (1.0 - s2);
        const double j = 1.0 / ((1.0 - s1) * (1.0 - s1) * (1.0 - s2) * (1.0 - s2));
        return g2(r1, r2) * j;
    };
    const GaussRule& g = gauss_legendre(8);
    Budget budget{spec.max_evals};
    const double hi = 1.0 - 1e-14;
    budget.spend(g.nodes.size() * g.nodes.size());
    const double whole = gauss_cell(mapped, 0.0, hi, 0.0, hi, g);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(whole));
    QuadResult res;
    adapt_2d(mapped, 0.0, hi, 0.0, hi, whole, tol, g, 0, budget, res.value, res.error_estimate);
    res.evals = spec.max_evals - budget.left;
    return res;
}

QuadResult integrate_biradial(const Fn2& f, int p, int q, const QuadratureSpec& spec) {
    if (p < 1 || q < 1) throw Error(ErrorCode::invalid_argument, "factor dimensions must be >= 1");
    // Tail check on the diagonal and both axes directions.
    {
        QuadratureSpec coarse = spec;
        coarse.rel_tol = 1e-6;
        coarse.abs_tol = 1e-9;
        const int n = p + q;
        const auto diag = [&](double r) {
            const double c = r / std::sqrt(2.0);
            return f(c, c) * std::pow(r, n - 1);
        };
        double prev = 0.0;
        int growing = 0;
        double lo = 32.0;
        for (int k = 0; k < 12; ++k) {
            const double shell = std::abs(integrate_1d(diag, lo, 2.0 * lo, coarse).value);
            if (k > 0 && shell > 0.7 * prev && shell > 1e-10) {
                if (++growing >= 4)
                    throw Error(ErrorCode::non_integrable, "biradial integrand has a non-integrable tail");
            }
            prev = shell;
            lo *= 2.0;
        }
    }
    const auto weighted = [&](double r1, double r2) {
        return f(r1, r2) * std::pow(r1, p - 1) * std::pow(r2, q - 1);
    };
    QuadResult res = integrate_2d_halfplane(weighted, spec);
    const double pref = sphere_area(p - 1) * sphere_area(q - 1);
    res.value *= pref;
    res.error_estimate *= pref;
    res.tail_bound = 0.0;
    return res;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)

namespace {
// clang-format off
constexpr double c2 = 1.0/5, c3 = 3.0/10, c4 = 4.0/5, c5 = 8.0/9;
constexpr double a21 = 1.0/5;
constexpr double a31 = 3.0/40, a32 = 9.0/40;
constexpr double a41 = 44.0/45, a42 = -56.0/15, a43 = 32.0/9;
constexpr double a51 = 19372.0/6561, a52 = -25360.0/2187, a53 = 64448.0/6561, a54 = -212.0/729;
constexpr double a61 = 9017.0/3168, a62 = -355.0/33, a63 = 46732.0/5247, a64 = 49.0/176, a65 = -5103.0/18656;
constexpr double b1 = 35.0/384, b3 = 500.0/1113, b4 = 125.0/192, b5 = -2187.0/6784, b6 = 11.0/84;
constexpr double e1 = 71.0/57600, e3 = -71.0/16695, e4 = 71.0/1920, e5 = -17253.0/339200, e6 = 22.0/525, e7 = -1.0/40;
// clang-format on
}  // namespace

Trajectory solve_ivp(const std::function<void(double, const double*, double*)>& rhs, double t0,
                     std::vector<double> y0, double t1, const OdeSpec& spec) {
    const std::size_t n = y0.size();
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    Trajectory traj;
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), ynew(n);

    rhs(t0, y0.data(), k1.data());
    traj.steps_.push_back({t0, y0, k1});

    double span = std::abs(t1 - t0);
    double h = span / 100.0;
    if (spec.max_step > 0.0) h = std::min(h, spec.max_step);
    double t = t0;
    std::vector<double> y = y0;
    std::size_t nsteps = 0;

    while (dir * (t1 - t) > 1e-15 * std::max(1.0, std::abs(t1))) {
        if (++nsteps > 4'000'000) throw Error(ErrorCode::non_convergent, "ODE solver exceeded step budget");
        h = std::min(h, std::abs(t1 - t));
        const double hs = dir * h;

        for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + hs * a21 * k1[i];
        rhs(t + c2 * hs, yt.data(), k2.data());
        for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * hs, yt.data(), k3.data());
        for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * hs, yt.data(), k4.data());
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * hs, yt.data(), k5.data());
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + hs, yt.data(), k6.data());
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + hs, ynew.data(), k7.data());

        double errnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = spec.abs_tol + spec.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            errnorm = std::max(errnorm, std::abs(e) / sc);
        }

        if (errnorm <= 1.0) {
            t += hs;
            y = ynew;
            k1 = k7;  // FSAL
            traj.steps_.push_back({t, y, k1});
            double ymax = 0.0;
            for (double v : y) ymax = std::max(ymax, std::abs(v));
            if (ymax > spec.blowup_cap) {
                traj.blew_up = true;
                return traj;
            }
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(errnorm, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (spec.max_step > 0.0) h = std::min(h, spec.max_step);
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw Error(ErrorCode::non_convergent, "ODE step size underflow");
    }
    return traj;
}

namespace {
std::size_t locate(const std::vector<Trajectory::Step>& s, double t) {
    std::size_t lo = 0, hi = s.size() - 1;
    const bool fwd = s.back().t >= s.front().t;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if ((s[mid].t <= t) == fwd)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}
}  // namespace

std::vector<double> Trajectory::eval(double t) const {
    const std::size_t i = locate(steps_, t);
    const Step& A = steps_[i];
    const Step& B = steps_[i + 1];
    const double h = B.t - A.t;
    const double s = (t - A.t) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    std::vector<double> out(A.y.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = h00 * A.y[k] + h10 * h * A.dy[k] + h01 * B.y[k] + h11 * h * B.dy[k];
    return out;
}

std::vector<double> Trajectory::eval_derivative(double t) const {
    const std::size_t i = locate(steps_, t);
    const Step& A = steps_[i];
    const Step& B = steps_[i + 1];
    const double h = B.t - A.t;
    const double s = (t - A.t) / h;
    const double g00 = 6 * s * (s - 1) / h, g10 = (3 * s - 1) * (s - 1);
    const double g01 = -6 * s * (s - 1) / h, g11 = s * (3 * s - 2);
    std::vector<double> out(A.y.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = g00 * A.y[k] + g10 * A.dy[k] + g01 * B.y[k] + g11 * B.dy[k];
    return out;
}

double find_root_bracketed(const Fn1& f, double lo, double hi, double tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw Error(ErrorCode::no_sign_change, "no sign change on the given bracket");
    for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
        // secant trial, clipped into the bracket; bisection fallback
        double m = lo - flo * (hi - lo) / (fhi - flo);
        const double margin = 0.1 * (hi - lo);
        if (!(m > lo + 1e-3 * margin) || !(m < hi - 1e-3 * margin)) m = 0.5 * (lo + hi);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (flo * fm < 0.0) {
            hi = m;
            fhi = fm;
        } else {
            lo = m;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// splitmix64-style counter hash
namespace {
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace

double CounterRng::uniform(std::uint64_t counter) const {
    const std::uint64_t h = mix64(mix64(seed_ ^ mix64(stream_)) ^ counter);
    return ((h >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t counter) const {
    const double u1 = uniform(2 * counter);
    const double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double neville_extrapolate(const std::vector<double>& x, const std::vector<double>& g) {
    std::vector<double> p = g;
    const std::size_t n = x.size();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = 0; i + k < n; ++i)
            p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i]);
    return p[0];
}

}  // namespace yamabe
