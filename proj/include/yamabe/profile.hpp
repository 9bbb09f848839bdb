#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "yamabe/dual.hpp"
#include "yamabe/numerics.hpp"

namespace yamabe {

enum class ProfileKind { closed_form_standard, numeric_radial, numeric_biradial };

// A member of Sigma: a finite-energy solution of Delta V = |V|^{2*-2} V
// on R^n (Delta = -div grad), evaluated through its biradial reduction
// V(x', x'') = V(|x'|, |x''|). Radial profiles accept any (p,q) split.
class Profile {
  public:
    virtual ~Profile() = default;

    int n() const { return n_; }
    virtual ProfileKind kind() const = 0;
    // biradial split this profile is tied to; radial profiles return {0,0}
    virtual std::pair<int, int> split() const { return {0, 0}; }
    virtual bool radial() const { return false; }

    // Value, gradient and Hessian in (r1, r2). Axis values (r1 = 0 or
    // r2 = 0) are the even-reflection limits.
    virtual Jet2 jet(double r1, double r2) const = 0;

    double value(double r1, double r2) const { return jet(r1, r2).v; }
    // evaluation at a full point x in R^n under the profile's split
    double value_rn(const std::vector<double>& x, int p, int q) const;

    double critical_exponent() const { return 2.0 * n_ / (n_ - 2.0); }

    virtual std::string generator() const { return "unknown"; }

  protected:
    explicit Profile(int n) : n_(n) {
        if (n < 3) throw Error(ErrorCode::dimension_error, "profiles require n >= 3");
    }
    int n_;
};

using ProfilePtr = std::shared_ptr<const Profile>;

// B_0^+ scaled: (mu / (mu^2 + |x|^2/(n(n-2))))^{(n-2)/2}, optionally negated.
class StandardBubble final : public Profile {
  public:
    StandardBubble(int n, double mu = 1.0, int sign = +1);
    ProfileKind kind() const override { return ProfileKind::closed_form_standard; }
    bool radial() const override { return true; }
    Jet2 jet(double r1, double r2) const override;
    // radial value/derivatives
    void radial_jet(double r, double& v, double& dv, double& ddv) const;
    double mu() const { return mu_; }
    int sign() const { return sign_; }
    std::string generator() const override { return "closed-form-standard"; }

  private:
    double mu_;
    int sign_;
};

ProfilePtr standard_bubble(int n, double mu = 1.0, int sign = +1);

// Kelvin transform V*(x) = |x|^{2-n} V(x/|x|^2) as a lazily evaluated profile.
ProfilePtr kelvin(const ProfilePtr& v);

// Flip V -> -V.
ProfilePtr negated(const ProfilePtr& v);

// Rescale V -> mu^{-(n-2)/2} V(./mu).
ProfilePtr rescaled(const ProfilePtr& v, double mu);

// Numeric radial profile: log-spaced samples of (v, v') with cubic local
// interpolation; v'' from the derivative of the interpolated slope.
class NumericRadialProfile final : public Profile {
  public:
    NumericRadialProfile(int n, std::vector<double> r, std::vector<double> v, std::vector<double> dv,
                         std::string generator = "numeric-radial");
    ProfileKind kind() const override { return ProfileKind::numeric_radial; }
    bool radial() const override { return true; }
    Jet2 jet(double r1, double r2) const override;
    void radial_jet(double r, double& v, double& dv, double& ddv) const;
    const std::vector<double>& grid() const { return r_; }
    const std::vector<double>& samples() const { return v_; }
    const std::vector<double>& slopes() const { return dv_; }
    std::string generator() const override { return generator_; }

  private:
    std::vector<double> r_, v_, dv_;
    std::string generator_;
};

struct AsymptoticInvariants {
    double lambda = 0.0;
    std::vector<double> alpha;
};

// lambda(V) = (1/((n-2) omega_{n-1})) int |V|^{2*-2} V dx, cross-checked
// against the Kelvin route V*(0). Throws on route disagreement.
double lambda_invariant(const ProfilePtr& v, const QuadratureSpec& spec = {});
double lambda_quadrature_route(const ProfilePtr& v, const QuadratureSpec& spec = {});
double lambda_kelvin_route(const ProfilePtr& v);

// alpha(V) = grad V*(0) via central differences + Richardson extrapolation.
std::vector<double> alpha_invariant(const ProfilePtr& v);
// same extraction for an arbitrary field on R^n (used for synthetic tails)
std::vector<double> alpha_from_field(int n, const std::function<double(const std::vector<double>&)>& field);

struct BubbleSummary {
    int n = 0;
    double lambda = 0.0;
    std::vector<double> alpha;
    std::optional<double> int_V2;              // requires n >= 5
    double int_V_2star = 0.0;                  // int |V|^{2*}
    double int_signed_2star_minus1 = 0.0;      // int |V|^{2*-2} V
    double int_grad2 = 0.0;                    // int |grad V|^2
    std::optional<double> weyl_otimes_b;
};

// Integral functionals of a profile. int V^2 is refused (non_integrable)
// when n <= 4.
BubbleSummary functionals(const ProfilePtr& v, const QuadratureSpec& spec = {}, bool want_V2 = true);

double dirichlet_energy(const ProfilePtr& v, const QuadratureSpec& spec = {});
double lp_norm_pow(const ProfilePtr& v, double pexp, const QuadratureSpec& spec = {});  // int |V|^p

struct DecayReport {
    double c_value = 0.0;     // sup (1+|x|)^{n-2} |V|
    double c_gradient = 0.0;  // sup (1+|x|)^{n-1} |grad V|
    double c_hessian = 0.0;   // sup (1+|x|)^n |Hess V|
};

DecayReport decay_check(const ProfilePtr& v, double r_max = 1e6);

// Versioned JSON document for profile persistence.
std::string profile_to_json(const ProfilePtr& v);
ProfilePtr profile_from_json(const std::string& text);

}  // namespace yamabe
