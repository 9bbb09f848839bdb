#pragma once

#include "yamabe/numerics.hpp"

namespace yamabe {

// Green's function mass on the round S^3 for L = Delta + h0 with constant
// h0 > 0, based at a pole and normalized so that
//   G(theta) = 1/(4 pi theta) + m + o(1)  as theta -> 0.
// m changes sign at h0 = 3/4 (positive below, negative above).
struct MassResult {
    double h0 = 0.0;
    double mass = 0.0;
    double mass_ode = 0.0;      // independent ODE + extrapolation route
    double leading_norm = 1.0;  // lim 4 pi theta G(theta), should be 1
};

// Closed form: m = -nu cot(nu pi) / (4 pi), nu = sqrt(1 - h0)        (h0 < 1)
//              m = -1 / (4 pi^2)                                     (h0 = 1)
//              m = -kappa coth(kappa pi) / (4 pi), kappa = sqrt(h0 - 1) (h0 > 1)
double mass_closed_form(double h0);

// Normalized Green's function value at angle theta in (0, pi).
double green_eval(double h0, double theta);

// Both routes, cross-checked. L is coercive only for h0 > 0; with
// require_coercive set, anything else is refused (non_coercive).
MassResult s3_mass(double h0, bool require_coercive = true, const OdeSpec& spec = {});

}  // namespace yamabe
