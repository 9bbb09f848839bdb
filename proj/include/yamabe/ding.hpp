#pragma once

#include <vector>

#include "yamabe/numerics.hpp"
#include "yamabe/profile.hpp"

namespace yamabe {

// Nodal solution u(t) of the latitude reduction of the sphere equation
//   -u'' - (q cot t - (p-1) tan t) u' + (n(n-2)/4) u = |u|^{4/(n-2)} u
// on (0, pi/2), regular at both endpoints.
struct LatitudeSolution {
    int p = 0, q = 0;
    double a0 = 0.0;  // shooting value u(0)
    std::vector<double> t, u, du;
    int nodes = 0;
    double residual_sup = 0.0;
    double energy = 0.0;  // int_{S^n} |tilde V|^{2*} dv
};

double constant_latitude_value(int p, int q);  // a* = (n(n-2)/4)^{(n-2)/4}

// u'' from the latitude ODE; rejects endpoint evaluation.
double latitude_rhs(double t, double u, double du, int p, int q);

struct ShotResult {
    double terminal_slope = 0.0;  // u' extrapolated to pi/2 through the endpoint series
    bool divergent = false;
    Trajectory trajectory;
    double t_start = 0.0, t_end = 0.0;
};

ShotResult shoot(double a, int p, int q, const OdeSpec& spec = {});

// Scan/bisection search for solutions with 0..max_nodes interior zeros.
std::vector<LatitudeSolution> find_solutions(int p, int q, int max_nodes, const OdeSpec& spec = {});

// Solve for a single shooting value to full accuracy and package the result.
LatitudeSolution solve_at(double a, int p, int q, const OdeSpec& spec = {});

// Stereographic pullback to an O(p)xO(q)-invariant member of Sigma on R^n.
class DingPullbackProfile final : public Profile {
  public:
    explicit DingPullbackProfile(LatitudeSolution sol);
    ProfileKind kind() const override { return ProfileKind::numeric_biradial; }
    std::pair<int, int> split() const override { return {sol_.p, sol_.q}; }
    Jet2 jet(double r1, double r2) const override;
    const LatitudeSolution& latitude() const { return sol_; }
    // latitude function with derivatives (quintic Hermite between samples)
    void u_jet(double t, double& u, double& du, double& ddu) const;
    std::string generator() const override { return "ding-pullback"; }

  private:
    LatitudeSolution sol_;
};

ProfilePtr pullback(const LatitudeSolution& sol);

// sup |Delta V - |V|^{2*-2} V| over an interior grid, normalized by
// sup |V|^{2*-1}.
double flat_residual(const ProfilePtr& v, int samples_per_axis = 48);

}  // namespace yamabe
