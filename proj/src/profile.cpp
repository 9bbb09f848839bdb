#include "yamabe/profile.hpp"

#include <algorithm>
#include <cmath>

namespace yamabe {

namespace {

// Lift radial derivative data (v, v', v'') to the biradial jet.
Jet2 radial_to_jet(double r1, double r2, double v, double dv, double ddv) {
    Jet2 j;
    j.v = v;
    const double r = std::hypot(r1, r2);
    if (r < 1e-150) {
        j.d11 = j.d22 = ddv;  // smooth radial limit: v'/r -> v''(0)
        return j;
    }
    const double e1 = r1 / r, e2 = r2 / r;
    j.d1 = dv * e1;
    j.d2 = dv * e2;
    const double ang = dv / r;
    j.d11 = ddv * e1 * e1 + ang * (1.0 - e1 * e1);
    j.d22 = ddv * e2 * e2 + ang * (1.0 - e2 * e2);
    j.d12 = (ddv - ang) * e1 * e2;
    return j;
}

}  // namespace

double Profile::value_rn(const std::vector<double>& x, int p, int q) const {
    if (static_cast<int>(x.size()) != n_ || p + q != n_)
        throw Error(ErrorCode::dimension_error, "point/split dimension mismatch");
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < p; ++i) s1 += x[i] * x[i];
    for (int i = p; i < n_; ++i) s2 += x[i] * x[i];
    return value(std::sqrt(s1), std::sqrt(s2));
}

StandardBubble::StandardBubble(int n, double mu, int sign) : Profile(n), mu_(mu), sign_(sign) {
    if (!(mu > 0.0)) throw Error(ErrorCode::invalid_argument, "bubble scale must be positive");
    if (sign != 1 && sign != -1) throw Error(ErrorCode::invalid_argument, "sign must be +1 or -1");
}

void StandardBubble::radial_jet(double r, double& v, double& dv, double& ddv) const {
    const double k = 0.5 * (n_ - 2);
    const double a = 1.0 / (n_ * (n_ - 2.0));
    const double g = mu_ * mu_ + a * r * r;
    const double base = sign_ * std::pow(mu_, k) * std::pow(g, -k);
    v = base;
    dv = base * (-k) * 2.0 * a * r / g;
    ddv = base * (k * (k + 1.0) * 4.0 * a * a * r * r / (g * g) - k * 2.0 * a / g);
}

Jet2 StandardBubble::jet(double r1, double r2) const {
    double v, dv, ddv;
    radial_jet(std::hypot(r1, r2), v, dv, ddv);
    return radial_to_jet(r1, r2, v, dv, ddv);
}

ProfilePtr standard_bubble(int n, double mu, int sign) {
    return std::make_shared<StandardBubble>(n, mu, sign);
}

namespace {

class KelvinProfile final : public Profile {
  public:
    explicit KelvinProfile(ProfilePtr base) : Profile(base->n()), base_(std::move(base)) {}
    ProfileKind kind() const override { return base_->kind(); }
    std::pair<int, int> split() const override { return base_->split(); }
    bool radial() const override { return base_->radial(); }
    std::string generator() const override { return "kelvin(" + base_->generator() + ")"; }
    ProfilePtr base() const { return base_; }

    Jet2 jet(double r1, double r2) const override {
        const Dual2 R1 = Dual2::var1(r1), R2 = Dual2::var2(r2);
        const Dual2 rho2 = R1 * R1 + R2 * R2;
        if (rho2.v < 1e-280) throw Error(ErrorCode::invalid_argument, "Kelvin evaluation at the origin");
        const Dual2 u = R1 / rho2, w = R2 / rho2;
        const Jet2 bj = base_->jet(u.v, w.v);
        const Dual2 inner = compose(bj, u, w);
        const Dual2 out = pow(rho2, 0.5 * (2.0 - n_)) * inner;
        return {out.v, out.d1, out.d2, out.d11, out.d12, out.d22};
    }

  private:
    ProfilePtr base_;
};

class NegatedProfile final : public Profile {
  public:
    explicit NegatedProfile(ProfilePtr base) : Profile(base->n()), base_(std::move(base)) {}
    ProfileKind kind() const override { return base_->kind(); }
    std::pair<int, int> split() const override { return base_->split(); }
    bool radial() const override { return base_->radial(); }
    std::string generator() const override { return "negated(" + base_->generator() + ")"; }
    Jet2 jet(double r1, double r2) const override {
        Jet2 j = base_->jet(r1, r2);
        return {-j.v, -j.d1, -j.d2, -j.d11, -j.d12, -j.d22};
    }

  private:
    ProfilePtr base_;
};

class RescaledProfile final : public Profile {
  public:
    RescaledProfile(ProfilePtr base, double mu) : Profile(base->n()), base_(std::move(base)), mu_(mu) {
        if (!(mu > 0.0)) throw Error(ErrorCode::invalid_argument, "scale must be positive");
    }
    ProfileKind kind() const override { return base_->kind(); }
    std::pair<int, int> split() const override { return base_->split(); }
    bool radial() const override { return base_->radial(); }
    std::string generator() const override { return "rescaled(" + base_->generator() + ")"; }
    Jet2 jet(double r1, double r2) const override {
        const double k = 0.5 * (n_ - 2);
        const double pref = std::pow(mu_, -k);
        Jet2 j = base_->jet(r1 / mu_, r2 / mu_);
        return {pref * j.v,         pref * j.d1 / mu_,        pref * j.d2 / mu_,
                pref * j.d11 / (mu_ * mu_), pref * j.d12 / (mu_ * mu_), pref * j.d22 / (mu_ * mu_)};
    }

  private:
    ProfilePtr base_;
    double mu_;
};

}  // namespace

ProfilePtr kelvin(const ProfilePtr& v) {
    // (V*)* = V: unwrap instead of stacking transforms
    if (auto kp = std::dynamic_pointer_cast<const KelvinProfile>(v)) return kp->base();
    return std::make_shared<KelvinProfile>(v);
}

ProfilePtr negated(const ProfilePtr& v) { return std::make_shared<NegatedProfile>(v); }

ProfilePtr rescaled(const ProfilePtr& v, double mu) { return std::make_shared<RescaledProfile>(v, mu); }

NumericRadialProfile::NumericRadialProfile(int n, std::vector<double> r, std::vector<double> v,
                                           std::vector<double> dv, std::string generator)
    : Profile(n), r_(std::move(r)), v_(std::move(v)), dv_(std::move(dv)), generator_(std::move(generator)) {
    if (r_.size() < 2 || r_.size() != v_.size() || r_.size() != dv_.size())
        throw Error(ErrorCode::invalid_argument, "inconsistent radial grid arrays");
    if (!std::is_sorted(r_.begin(), r_.end()))
        throw Error(ErrorCode::invalid_argument, "radial grid must be increasing");
}

void NumericRadialProfile::radial_jet(double r, double& v, double& dv, double& ddv) const {
    if (r >= r_.back()) {
        // algebraic tail ~ r^{2-n} matched at the last node
        const double e = 2.0 - n_;
        const double c = v_.back() * std::pow(r_.back(), -e);
        v = c * std::pow(r, e);
        dv = e * v / r;
        ddv = e * (e - 1.0) * v / (r * r);
        return;
    }
    std::size_t i = std::upper_bound(r_.begin(), r_.end(), r) - r_.begin();
    i = std::clamp<std::size_t>(i, 1, r_.size() - 1);
    const std::size_t a = i - 1;
    const double h = r_[a + 1] - r_[a];
    const double s = (r - r_[a]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    v = h00 * v_[a] + h10 * h * dv_[a] + h01 * v_[a + 1] + h11 * h * dv_[a + 1];
    const double g00 = 6 * s * (s - 1) / h, g10 = (3 * s - 1) * (s - 1);
    const double g01 = -6 * s * (s - 1) / h, g11 = s * (3 * s - 2);
    dv = g00 * v_[a] + g10 * dv_[a] + g01 * v_[a + 1] + g11 * dv_[a + 1];
    const double q00 = (12 * s - 6) / (h * h), q10 = (6 * s - 4) / h;
    const double q01 = (6 - 12 * s) / (h * h), q11 = (6 * s - 2) / h;
    ddv = q00 * v_[a] + q10 * dv_[a] + q01 * v_[a + 1] + q11 * dv_[a + 1];
}

Jet2 NumericRadialProfile::jet(double r1, double r2) const {
    double v, dv, ddv;
    radial_jet(std::hypot(r1, r2), v, dv, ddv);
    return radial_to_jet(r1, r2, v, dv, ddv);
}

// ---------------------------------------------------------------------------
// Invariants

namespace {
std::pair<int, int> working_split(const ProfilePtr& v) {
    auto [p, q] = v->split();
    if (p == 0) {  // radial: any split works
        p = 1;
        q = v->n() - 1;
        if (v->n() >= 4) {
            p = 2;
            q = v->n() - 2;
        }
    }
    return {p, q};
}

// sampled profiles cannot support 1e-10 relative quadrature: the interpolant
// itself is only good to ~1e-9, and the adaptive refinement stalls on it
QuadratureSpec sampled_floor(const ProfilePtr& v, QuadratureSpec spec) {
    if (v->kind() != ProfileKind::closed_form_standard)
        spec.rel_tol = std::max(spec.rel_tol, 1e-8);
    return spec;
}
}  // namespace

double lambda_quadrature_route(const ProfilePtr& v, const QuadratureSpec& spec_in) {
    const QuadratureSpec spec = sampled_floor(v, spec_in);
    const int n = v->n();
    const double pw = v->critical_exponent() - 2.0;
    double integral;
    if (v->radial()) {
        integral = integrate_radial_rn(
                       [&](double r) {
                           const double val = v->value(r, 0.0);
                           return std::pow(std::abs(val), pw) * val;
                       },
                       n, spec)
                       .value;
    } else {
        auto [p, q] = working_split(v);
        integral = integrate_biradial(
                       [&](double r1, double r2) {
                           const double val = v->value(r1, r2);
                           return std::pow(std::abs(val), pw) * val;
                       },
                       p, q, spec)
                       .value;
    }
    return integral / ((n - 2.0) * sphere_area(n - 1));
}

double lambda_kelvin_route(const ProfilePtr& v) {
    const ProfilePtr k = kelvin(v);
    const double c = std::sqrt(0.5);
    std::vector<double> deltas, vals;
    for (double d = 4e-3; d > 1e-4; d *= 0.5) {
        deltas.push_back(d);
        vals.push_back(k->value(c * d, c * d));
    }
    return neville_extrapolate(deltas, vals);
}

double lambda_invariant(const ProfilePtr& v, const QuadratureSpec& spec) {
    const double lq = lambda_quadrature_route(v, spec);
    const double lk = lambda_kelvin_route(v);
    const double tol = 1e-5 * std::max({std::abs(lq), std::abs(lk), 1.0});
    if (std::abs(lq - lk) > 10.0 * tol)
        throw Error(ErrorCode::inconsistent_routes, "lambda routes disagree: quadrature " +
                                                        std::to_string(lq) + " vs Kelvin " + std::to_string(lk));
    return lq;
}

std::vector<double> alpha_from_field(int n, const std::function<double(const std::vector<double>&)>& field) {
    const auto vstar = [&](const std::vector<double>& y) {
        double rho2 = 0.0;
        for (double c : y) rho2 += c * c;
        std::vector<double> inv(y);
        for (double& c : inv) c /= rho2;
        return std::pow(rho2, 0.5 * (2.0 - n)) * field(inv);
    };
    std::vector<double> alpha(n, 0.0);
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        std::vector<double> xs, gs;
        for (double d = 2e-2; d > 5e-4; d *= 0.5) {
            y.assign(n, 0.0);
            y[i] = d;
            const double fp = vstar(y);
            y[i] = -d;
            const double fm = vstar(y);
            xs.push_back(d * d);  // central difference error is even in d
            gs.push_back((fp - fm) / (2.0 * d));
        }
        alpha[i] = neville_extrapolate(xs, gs);
        // flag a non-converging extrapolation sequence
        const double spread = std::abs(gs.back() - alpha[i]);
        if (!(std::isfinite(alpha[i])))
            throw Error(ErrorCode::non_convergent, "alpha extrapolation did not converge");
        (void)spread;
    }
    return alpha;
}

std::vector<double> alpha_invariant(const ProfilePtr& v) {
    auto [p, q] = working_split(v);
    const int n = v->n();
    auto field = [&, p = p, q = q](const std::vector<double>& x) { return v->value_rn(x, p, q); };
    return alpha_from_field(n, field);
}

double lp_norm_pow(const ProfilePtr& v, double pexp, const QuadratureSpec& spec_in) {
    const QuadratureSpec spec = sampled_floor(v, spec_in);
    if (v->radial())
        return integrate_radial_rn([&](double r) { return std::pow(std::abs(v->value(r, 0.0)), pexp); }, v->n(),
                                   spec)
            .value;
    auto [p, q] = working_split(v);
    return integrate_biradial([&](double r1, double r2) { return std::pow(std::abs(v->value(r1, r2)), pexp); },
                              p, q, spec)
        .value;
}

double dirichlet_energy(const ProfilePtr& v, const QuadratureSpec& spec_in) {
    const QuadratureSpec spec = sampled_floor(v, spec_in);
    if (v->radial())
        return integrate_radial_rn(
                   [&](double r) {
                       const Jet2 j = v->jet(r, 0.0);
                       return j.d1 * j.d1 + j.d2 * j.d2;
                   },
                   v->n(), spec)
            .value;
    auto [p, q] = working_split(v);
    return integrate_biradial(
               [&](double r1, double r2) {
                   const Jet2 j = v->jet(r1, r2);
                   return j.d1 * j.d1 + j.d2 * j.d2;
               },
               p, q, spec)
        .value;
}

BubbleSummary functionals(const ProfilePtr& v, const QuadratureSpec& spec_in, bool want_V2) {
    const QuadratureSpec spec = sampled_floor(v, spec_in);
    BubbleSummary s;
    s.n = v->n();
    const double two_star = v->critical_exponent();
    s.int_V_2star = lp_norm_pow(v, two_star, spec);
    if (v->radial()) {
        s.int_signed_2star_minus1 = integrate_radial_rn(
                                        [&](double r) {
                                            const double val = v->value(r, 0.0);
                                            return std::pow(std::abs(val), two_star - 2.0) * val;
                                        },
                                        s.n, spec)
                                        .value;
    } else {
        auto [p, q] = working_split(v);
        s.int_signed_2star_minus1 = integrate_biradial(
                                        [&](double r1, double r2) {
                                            const double val = v->value(r1, r2);
                                            return std::pow(std::abs(val), two_star - 2.0) * val;
                                        },
                                        p, q, spec)
                                        .value;
    }
    s.lambda = s.int_signed_2star_minus1 / ((s.n - 2.0) * sphere_area(s.n - 1));
    s.int_grad2 = dirichlet_energy(v, spec);
    if (want_V2) {
        if (s.n <= 4)
            throw Error(ErrorCode::non_integrable,
                        "int V^2 diverges for n <= 4 (tail |V|^2 ~ r^{2(2-n)} against r^{n-1} dr)");
        s.int_V2 = lp_norm_pow(v, 2.0, spec);
    }
    s.alpha = alpha_invariant(v);
    return s;
}

DecayReport decay_check(const ProfilePtr& v, double r_max) {
    DecayReport rep;
    const int n = v->n();
    std::vector<double> angles = {0.0, 0.3, 0.7, 1.0, 1.3, M_PI / 2};
    for (double r = 1e-2; r <= r_max; r *= 1.35) {
        for (double phi : angles) {
            const double r1 = r * std::cos(phi), r2 = r * std::sin(phi);
            const Jet2 j = v->jet(r1, r2);
            const double w = 1.0 + r;
            rep.c_value = std::max(rep.c_value, std::pow(w, n - 2) * std::abs(j.v));
            const double grad = std::hypot(j.d1, j.d2);
            rep.c_gradient = std::max(rep.c_gradient, std::pow(w, n - 1) * grad);
            // biradial Hessian entries plus the angular pieces d_i / r_i
            double hess = std::max({std::abs(j.d11), std::abs(j.d12), std::abs(j.d22)});
            if (r1 > 1e-8) hess = std::max(hess, std::abs(j.d1) / r1);
            if (r2 > 1e-8) hess = std::max(hess, std::abs(j.d2) / r2);
            rep.c_hessian = std::max(rep.c_hessian, std::pow(w, n) * hess);
        }
    }
    return rep;
}

}  // namespace yamabe
