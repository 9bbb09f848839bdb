#include "yamabe/mass_s3.hpp"

#include <cmath>

namespace yamabe {

namespace {

void check_resonance(double h0) {
    if (h0 < 1.0) {
        const double nu = std::sqrt(1.0 - h0);
        if (std::abs(std::sin(nu * M_PI)) < 1e-12)
            throw Error(ErrorCode::invalid_argument, "h0 hits a spectral resonance; no Green's function");
    }
}

}  // namespace

double mass_closed_form(double h0) {
    check_resonance(h0);
    if (h0 < 1.0) {
        const double nu = std::sqrt(1.0 - h0);
        return -nu * std::cos(nu * M_PI) / std::sin(nu * M_PI) / (4.0 * M_PI);
    }
    if (h0 == 1.0) return -1.0 / (4.0 * M_PI * M_PI);
    const double kappa = std::sqrt(h0 - 1.0);
    return -kappa * std::cosh(kappa * M_PI) / std::sinh(kappa * M_PI) / (4.0 * M_PI);
}

double green_eval(double h0, double theta) {
    if (!(theta > 0.0) || !(theta < M_PI))
        throw Error(ErrorCode::invalid_argument, "theta must lie in (0, pi)");
    check_resonance(h0);
    // G = F(theta)/sin(theta) with F'' = (h0 - 1) F and F(pi) = 0
    if (h0 < 1.0) {
        const double nu = std::sqrt(1.0 - h0);
        return std::sin(nu * (M_PI - theta)) / (4.0 * M_PI * std::sin(nu * M_PI) * std::sin(theta));
    }
    if (h0 == 1.0) return (M_PI - theta) / (4.0 * M_PI * M_PI * std::sin(theta));
    const double kappa = std::sqrt(h0 - 1.0);
    return std::sinh(kappa * (M_PI - theta)) / (4.0 * M_PI * std::sinh(kappa * M_PI) * std::sin(theta));
}

MassResult s3_mass(double h0, bool require_coercive, const OdeSpec& spec) {
    if (require_coercive && !(h0 > 0.0))
        throw Error(ErrorCode::non_coercive, "Delta + h0 is not coercive on S^3 for h0 <= 0");
    MassResult res;
    res.h0 = h0;
    res.mass = mass_closed_form(h0);

    // ODE route: integrate the zonal equation -G'' - 2 cot(theta) G' + h0 G = 0
    // from the antipode (psi(s) = G(pi - s), psi(0) = 1, psi'(0) = 0), then
    // peel off the 1/theta singularity by extrapolation.
    const double s0 = 1e-3;
    const double a2 = h0 / 6.0, a4 = h0 * (h0 + 4.0 / 3.0) / 120.0;
    std::vector<double> y0{1.0 + a2 * s0 * s0 + a4 * s0 * s0 * s0 * s0,
                           2.0 * a2 * s0 + 4.0 * a4 * s0 * s0 * s0};
    OdeSpec tight = spec;
    tight.rel_tol = std::min(spec.rel_tol, 1e-13);
    tight.abs_tol = std::min(spec.abs_tol, 1e-15);
    std::vector<double> thetas;
    for (int j = 0; j < 10; ++j) thetas.push_back(0.4 / (1 << j));
    const double s_end = M_PI - thetas.back();
    Trajectory traj = solve_ivp(
        [&](double s, const double* y, double* dy) {
            dy[0] = y[1];
            dy[1] = -2.0 / std::tan(s) * y[1] + h0 * y[0];
        },
        s0, y0, s_end, tight);
    if (traj.blew_up) throw Error(ErrorCode::non_convergent, "Green ODE integration failed");

    std::vector<double> tg;  // theta * G(theta), analytic at theta = 0
    for (double th : thetas) tg.push_back(th * traj.eval(M_PI - th)[0]);
    const double a = neville_extrapolate(thetas, tg);
    std::vector<double> bg;
    for (std::size_t i = 0; i < thetas.size(); ++i) bg.push_back((tg[i] - a) / thetas[i]);
    const double b = neville_extrapolate(thetas, bg);
    res.mass_ode = b / (4.0 * M_PI * a);

    // closed-form normalization check
    std::vector<double> lead;
    for (double th : thetas) lead.push_back(4.0 * M_PI * th * green_eval(h0, th));
    res.leading_norm = neville_extrapolate(thetas, lead);

    if (std::abs(res.mass - res.mass_ode) > 1e-6 * std::max(1.0, std::abs(res.mass)))
        throw Error(ErrorCode::inconsistent_routes, "S^3 mass routes disagree beyond tolerance");
    return res;
}

}  // namespace yamabe
