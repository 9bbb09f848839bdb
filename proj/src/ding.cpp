#include "yamabe/ding.hpp"

#include <algorithm>
#include <cmath>

namespace yamabe {

namespace {

double nonlinear_g(double u, int n) {
    const double A = n * (n - 2.0) / 4.0;
    return A * u - std::pow(std::abs(u), 4.0 / (n - 2.0)) * u;
}

double nonlinear_gp(double u, int n) {
    const double A = n * (n - 2.0) / 4.0;
    const double ts = 2.0 * n / (n - 2.0);
    return A - (ts - 1.0) * std::pow(std::abs(u), 4.0 / (n - 2.0));
}

// Frobenius series around a regular singular endpoint: weight w is the
// cot-like coefficient (q at t=0, p-1 at t=pi/2), mcoef the tan-like one.
struct EndpointSeries {
    double u2, u4;
    EndpointSeries(double y0, int w, int mcoef, int n) {
        u2 = nonlinear_g(y0, n) / (w + 1.0);
        u4 = u2 * (2.0 * w + 6.0 * mcoef + 3.0 * nonlinear_gp(y0, n)) / (3.0 + w);
    }
    double value(double y0, double tau) const { return y0 + 0.5 * u2 * tau * tau + u4 * tau * tau * tau * tau / 24.0; }
    double slope(double tau) const { return u2 * tau + u4 * tau * tau * tau / 6.0; }
};

// end value b such that the pi/2 series reproduces u at tau = t0
double match_end_value(double u_at, double t0, int p, int q, int n) {
    double b = u_at;
    for (int it = 0; it < 4; ++it) {
        EndpointSeries s(b, p - 1, q, n);
        b = u_at - 0.5 * s.u2 * t0 * t0 - s.u4 * t0 * t0 * t0 * t0 / 24.0;
    }
    return b;
}

}  // namespace

double constant_latitude_value(int p, int q) {
    const int n = p + q;
    return std::pow(n * (n - 2.0) / 4.0, (n - 2.0) / 4.0);
}

double latitude_rhs(double t, double u, double du, int p, int q) {
    if (!(t > 0.0) || !(t < M_PI / 2))
        throw Error(ErrorCode::invalid_argument, "latitude RHS is singular at the endpoints");
    const int n = p + q;
    const double c = q / std::tan(t) - (p - 1) * std::tan(t);
    return -c * du + nonlinear_g(u, n);
}

ShotResult shoot(double a, int p, int q, const OdeSpec& spec) {
    const int n = p + q;
    const double t0 = spec.endpoint_series_radius;
    const double t1 = M_PI / 2 - t0;
    ShotResult res;
    res.t_start = t0;
    res.t_end = t1;

    if (a == 0.0) {  // identically zero trajectory
        res.terminal_slope = 0.0;
        std::vector<double> y0{0.0, 0.0};
        res.trajectory = solve_ivp([&](double, const double*, double* dy) { dy[0] = dy[1] = 0.0; }, t0, y0, t1, spec);
        return res;
    }

    EndpointSeries s0(a, q, p - 1, n);
    std::vector<double> y0{s0.value(a, t0), s0.slope(t0)};
    OdeSpec ospec = spec;
    if (ospec.max_step <= 0.0) ospec.max_step = 1.5e-3;
    res.trajectory = solve_ivp(
        [&](double t, const double* y, double* dy) {
            dy[0] = y[1];
            dy[1] = latitude_rhs(t, y[0], y[1], p, q);
        },
        t0, y0, t1, ospec);
    if (res.trajectory.blew_up) {
        res.divergent = true;
        return res;
    }
    const auto yend = res.trajectory.steps().back().y;
    const double b = match_end_value(yend[0], t0, p, q, n);
    EndpointSeries s1(b, p - 1, q, n);
    // a regular solution has u'(t1) = -slope(tau=t0); report the mismatch
    res.terminal_slope = yend[1] + s1.slope(t0);
    return res;
}

namespace {

int count_nodes(const Trajectory& traj) {
    int k = 0;
    double prev = traj.steps().front().y[0];
    for (const auto& st : traj.steps()) {
        const double u = st.y[0];
        if (u != 0.0 && prev != 0.0 && u * prev < 0.0) ++k;
        if (u != 0.0) prev = u;
    }
    return k;
}

}  // namespace

LatitudeSolution solve_at(double a, int p, int q, const OdeSpec& spec) {
    const int n = p + q;
    OdeSpec tight = spec;
    tight.rel_tol = std::min(spec.rel_tol, 1e-11);
    tight.abs_tol = std::min(spec.abs_tol, 1e-12);
    if (tight.max_step <= 0.0) tight.max_step = 1.5e-3;
    ShotResult shot = shoot(a, p, q, tight);
    if (shot.divergent) throw Error(ErrorCode::non_convergent, "shot diverges before the far endpoint");

    LatitudeSolution sol;
    sol.p = p;
    sol.q = q;
    sol.a0 = a;
    sol.nodes = count_nodes(shot.trajectory);

    const auto yend = shot.trajectory.steps().back().y;
    const double b = match_end_value(yend[0], shot.t_start, p, q, n);

    sol.t.push_back(0.0);
    sol.u.push_back(a);
    sol.du.push_back(0.0);
    for (const auto& st : shot.trajectory.steps()) {
        sol.t.push_back(st.t);
        sol.u.push_back(st.y[0]);
        sol.du.push_back(st.y[1]);
    }
    sol.t.push_back(M_PI / 2);
    sol.u.push_back(b);
    sol.du.push_back(0.0);

    // ODE residual of the stored representation at interval midpoints
    DingPullbackProfile prof(sol);
    double res = 0.0, scale = 1.0;
    for (std::size_t i = 1; i + 2 < sol.t.size(); ++i) {
        const double tm = 0.5 * (sol.t[i] + sol.t[i + 1]);
        double u, du, ddu;
        prof.u_jet(tm, u, du, ddu);
        res = std::max(res, std::abs(ddu - latitude_rhs(tm, u, du, p, q)));
        scale = std::max(scale, std::abs(u));
    }
    sol.residual_sup = res / std::max(1.0, std::pow(scale, (n + 2.0) / (n - 2.0)));

    // sphere energy int |u|^{2*} over the warped product measure
    const double two_star = 2.0 * n / (n - 2.0);
    const double pref = sphere_area(p - 1) * sphere_area(q);
    QuadratureSpec qs;
    qs.rel_tol = 1e-10;
    sol.energy = pref * integrate_1d_value(
                            [&](double t) {
                                double u, du, ddu;
                                prof.u_jet(t, u, du, ddu);
                                return std::pow(std::abs(u), two_star) * std::pow(std::cos(t), p - 1) *
                                       std::pow(std::sin(t), q);
                            },
                            0.0, M_PI / 2, qs);
    return sol;
}

std::vector<LatitudeSolution> find_solutions(int p, int q, int max_nodes, const OdeSpec& spec) {
    if (p < 2 || q < 2) throw Error(ErrorCode::invalid_argument, "factor dimensions p, q must both be >= 2");
    if (max_nodes < 0) throw Error(ErrorCode::invalid_argument, "max_nodes must be >= 0");
    const double astar = constant_latitude_value(p, q);

    struct GridPoint {
        double a, slope;
        bool ok;
    };
    const int npts = 240 + 120 * max_nodes;
    const double lo = astar / 50.0, hi = astar * 50.0 * std::pow(4.0, max_nodes);
    std::vector<GridPoint> grid(npts);
    for (int i = 0; i < npts; ++i) {
        const double a = lo * std::pow(hi / lo, static_cast<double>(i) / (npts - 1));
        try {
            ShotResult s = shoot(a, p, q, spec);
            grid[i] = {a, s.terminal_slope, !s.divergent};
        } catch (const Error&) {
            grid[i] = {a, 0.0, false};
        }
    }

    std::vector<double> roots;
    roots.push_back(astar);  // exact constant solution
    const auto slope_of = [&](double a) { return shoot(a, p, q, spec).terminal_slope; };
    for (int i = 0; i + 1 < npts; ++i) {
        if (!grid[i].ok || !grid[i + 1].ok) continue;
        if (grid[i].slope * grid[i + 1].slope < 0.0) {
            const double r = find_root_bracketed(slope_of, grid[i].a, grid[i + 1].a, 1e-12 * astar);
            if (std::abs(r - astar) > 1e-7 * astar) roots.push_back(r);
        }
    }

    std::vector<LatitudeSolution> out;
    for (double a : roots) {
        try {
            LatitudeSolution sol = solve_at(a, p, q, spec);
            if (sol.nodes <= max_nodes) out.push_back(std::move(sol));
        } catch (const Error&) {
            // divergent refinements are dropped, absence reported by gaps
        }
    }
    std::sort(out.begin(), out.end(), [](const LatitudeSolution& x, const LatitudeSolution& y) {
        if (x.nodes != y.nodes) return x.nodes < y.nodes;
        return x.a0 < y.a0;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Pullback profile

DingPullbackProfile::DingPullbackProfile(LatitudeSolution sol) : Profile(sol.p + sol.q), sol_(std::move(sol)) {
    if (sol_.t.size() < 3) throw Error(ErrorCode::invalid_argument, "latitude grid too small");
}

void DingPullbackProfile::u_jet(double t, double& u, double& du, double& ddu) const {
    const auto& T = sol_.t;
    t = std::clamp(t, 0.0, M_PI / 2);
    std::size_t i = std::upper_bound(T.begin(), T.end(), t) - T.begin();
    i = std::clamp<std::size_t>(i, 1, T.size() - 1);
    const std::size_t a = i - 1;
    const double h = T[a + 1] - T[a];
    const double s = (t - T[a]) / h;

    const auto node_dd = [&](std::size_t k) {
        const double tk = T[k];
        if (k == 0) return EndpointSeries(sol_.u[0], sol_.q, sol_.p - 1, n_).u2;
        if (k + 1 == T.size()) return EndpointSeries(sol_.u[k], sol_.p - 1, sol_.q, n_).u2;
        return latitude_rhs(tk, sol_.u[k], sol_.du[k], sol_.p, sol_.q);
    };

    // quintic Hermite from (u, u', u'') at both interval ends
    const double y0 = sol_.u[a], m0 = h * sol_.du[a], k0 = h * h * node_dd(a);
    const double y1 = sol_.u[a + 1], m1 = h * sol_.du[a + 1], k1 = h * h * node_dd(a + 1);
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double H0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
    const double H1 = s - 6 * s3 + 8 * s4 - 3 * s5;
    const double H2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
    const double H3 = 0.5 * s3 - s4 + 0.5 * s5;
    const double H4 = -4 * s3 + 7 * s4 - 3 * s5;
    const double H5 = 10 * s3 - 15 * s4 + 6 * s5;
    u = y0 * H0 + m0 * H1 + k0 * H2 + k1 * H3 + m1 * H4 + y1 * H5;

    const double dH0 = -30 * s2 + 60 * s3 - 30 * s4;
    const double dH1 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
    const double dH2 = s - 4.5 * s2 + 6 * s3 - 2.5 * s4;
    const double dH3 = 1.5 * s2 - 4 * s3 + 2.5 * s4;
    const double dH4 = -12 * s2 + 28 * s3 - 15 * s4;
    const double dH5 = 30 * s2 - 60 * s3 + 30 * s4;
    du = (y0 * dH0 + m0 * dH1 + k0 * dH2 + k1 * dH3 + m1 * dH4 + y1 * dH5) / h;

    const double qH0 = -60 * s + 180 * s2 - 120 * s3;
    const double qH1 = -36 * s + 96 * s2 - 60 * s3;
    const double qH2 = 1 - 9 * s + 18 * s2 - 10 * s3;
    const double qH3 = 3 * s - 12 * s2 + 10 * s3;
    const double qH4 = -24 * s + 84 * s2 - 60 * s3;
    const double qH5 = 60 * s - 180 * s2 + 120 * s3;
    ddu = (y0 * qH0 + m0 * qH1 + k0 * qH2 + k1 * qH3 + m1 * qH4 + y1 * qH5) / (h * h);
}

Jet2 DingPullbackProfile::jet(double r1, double r2) const {
    const double k = 0.5 * (n_ - 2);
    const Dual2 R1 = Dual2::var1(r1), R2 = Dual2::var2(r2);
    const Dual2 rsq = R1 * R1 + R2 * R2;
    const Dual2 s = rsq + 1.0;
    const Dual2 conf = pow(2.0 / s, k);
    // latitude angle: cos t = 2 r1 / (1+r^2); the sine numerator keeps the
    // map smooth across the equator
    Dual2 g = 4.0 * R2 * R2 + (rsq - 1.0) * (rsq - 1.0);

    // Near the pole (r1,r2) = (1,0) the angle itself is a cone and sqrt(g)
    // loses all derivative accuracy; u is even in t there, so compose the
    // endpoint series with the smooth quantity t^2 instead.
    const double denom = 4.0 * r1 * r1;
    if (denom > 1.0 && g.v < 1e-4 * denom) {
        const Dual2 x2 = g / (4.0 * R1 * R1);  // tan^2 t
        const Dual2 t2 = x2 * (1.0 + x2 * (-2.0 / 3.0) + x2 * x2 * (23.0 / 45.0));
        const EndpointSeries es(sol_.u.front(), sol_.q, sol_.p - 1, n_);
        const Dual2 up = t2 * (es.u4 / 24.0) * t2 + t2 * (0.5 * es.u2) + sol_.u.front();
        const Dual2 out = conf * up;
        return {out.v, out.d1, out.d2, out.d11, out.d12, out.d22};
    }

    if (g.v < 1e-28) g = g + 1e-28;  // exact axis hit far from the pole
    const Dual2 t = atan2(sqrt(g), 2.0 * R1);
    double u, du, ddu;
    u_jet(t.v, u, du, ddu);
    const Dual2 out = conf * chain(t, u, du, ddu);
    return {out.v, out.d1, out.d2, out.d11, out.d12, out.d22};
}

ProfilePtr pullback(const LatitudeSolution& sol) { return std::make_shared<DingPullbackProfile>(sol); }

double flat_residual(const ProfilePtr& v, int samples_per_axis) {
    auto [p, q] = v->split();
    if (p == 0) {
        p = 1;
        q = v->n() - 1;
    }
    const double two_star = v->critical_exponent();
    double res = 0.0, scale = 0.0;
    for (int i = 0; i < samples_per_axis; ++i) {
        const double r = 0.05 * std::pow(20.0 / 0.05, static_cast<double>(i) / (samples_per_axis - 1));
        for (int j = 1; j <= 12; ++j) {
            const double phi = j * (M_PI / 2) / 13.0;
            const double r1 = r * std::cos(phi), r2 = r * std::sin(phi);
            const Jet2 jv = v->jet(r1, r2);
            const double lap = -(jv.d11 + (p - 1) / r1 * jv.d1 + jv.d22 + (q - 1) / r2 * jv.d2);
            const double rhs = std::pow(std::abs(jv.v), two_star - 2.0) * jv.v;
            res = std::max(res, std::abs(lap - rhs));
            scale = std::max(scale, std::pow(std::abs(jv.v), two_star - 1.0));
        }
    }
    return res / std::max(scale, 1e-300);
}

}  // namespace yamabe
