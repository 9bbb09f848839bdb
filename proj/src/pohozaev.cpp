#include "yamabe/pohozaev.hpp"

#include <cmath>

namespace yamabe {

namespace {

std::pair<int, int> split_for(const Profile& v) {
    auto [p, q] = v.split();
    if (p == 0) {
        if (v.n() >= 4) return {2, v.n() - 2};
        return {1, 2};
    }
    return {p, q};
}

}  // namespace

PohozaevReport pohozaev_terms(const ProfilePtr& v, double pexp, double h0, double delta,
                              const QuadratureSpec& spec) {
    if (!v) throw Error(ErrorCode::invalid_argument, "null profile");
    if (!(delta > 0.0)) throw Error(ErrorCode::invalid_argument, "delta must be positive");
    if (!(pexp > 1.0)) throw Error(ErrorCode::invalid_argument, "exponent must exceed 1");
    const int n = v->n();
    const auto [p, q] = split_for(*v);
    const double wpq = sphere_area(p - 1) * sphere_area(q - 1);
    const double two_star = v->critical_exponent();
    const double k = (n - 2.0) / 2.0;

    PohozaevReport rep;
    rep.delta = delta;
    rep.pexp = pexp;
    rep.h0 = h0;

    // sampled profiles carry an interpolation noise floor; below it the
    // adaptive refinement only burns budget on the nodal-set kinks
    QuadratureSpec eff = spec;
    if (v->kind() != ProfileKind::closed_form_standard)
        eff.rel_tol = std::max(eff.rel_tol, 1e-9);

    const auto angular_weight = [&](double phi) {
        return std::pow(std::cos(phi), p - 1) * std::pow(std::sin(phi), q - 1);
    };

    rep.boundary = wpq * std::pow(delta, n - 1) *
                   integrate_1d_value(
                       [&](double phi) {
                           const double c = std::cos(phi), s = std::sin(phi);
                           const Jet2 j = v->jet(delta * c, delta * s);
                           const double dn = c * j.d1 + s * j.d2;
                           const double grad2 = j.d1 * j.d1 + j.d2 * j.d2;
                           return angular_weight(phi) *
                                  (k * j.v * dn - 0.5 * delta * grad2 + delta * dn * dn +
                                   delta / pexp * std::pow(std::abs(j.v), pexp));
                       },
                       0.0, M_PI / 2, eff);

    const auto ball = [&](const std::function<double(const Jet2&, double, double)>& f) {
        return wpq * integrate_1d_value(
                         [&](double rho) {
                             return std::pow(rho, n - 1) *
                                    integrate_1d_value(
                                        [&](double phi) {
                                            const double r1 = rho * std::cos(phi), r2 = rho * std::sin(phi);
                                            return angular_weight(phi) * f(v->jet(r1, r2), r1, r2);
                                        },
                                        0.0, M_PI / 2, eff);
                         },
                         0.0, delta, eff);
    };

    rep.volume_subcritical =
        n * (1.0 / pexp - 1.0 / two_star) *
        ball([&](const Jet2& j, double, double) { return std::pow(std::abs(j.v), pexp); });
    rep.volume_potential =
        h0 * ball([&](const Jet2& j, double r1, double r2) { return (r1 * j.d1 + r2 * j.d2 + k * j.v) * j.v; });
    rep.defect = rep.boundary - rep.volume_subcritical - rep.volume_potential;
    return rep;
}

double mass_boundary_functional(const Field3& g, double delta, int sphere_rule) {
    if (!(delta > 0.0)) throw Error(ErrorCode::invalid_argument, "delta must be positive");
    const GaussRule& gr = gauss_legendre(sphere_rule);
    const int naz = 2 * sphere_rule;
    double total = 0.0;
    std::vector<double> x(3), grad(3);
    for (int i = 0; i < sphere_rule; ++i) {
        const double u = gr.nodes[i];  // cos(theta) on [-1, 1]
        const double st = std::sqrt(std::max(0.0, 1.0 - u * u));
        for (int a = 0; a < naz; ++a) {
            const double psi = 2.0 * M_PI * a / naz;
            x[0] = delta * st * std::cos(psi);
            x[1] = delta * st * std::sin(psi);
            x[2] = delta * u;
            double val;
            g(x, val, grad);
            const double dn = (grad[0] * x[0] + grad[1] * x[1] + grad[2] * x[2]) / delta;
            const double g2 = grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2];
            total += gr.weights[i] * (2.0 * M_PI / naz) * delta * delta *
                     (0.5 * val * dn - 0.5 * delta * g2 + delta * dn * dn);
        }
    }
    return total;
}

}  // namespace yamabe
