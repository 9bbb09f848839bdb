#pragma once

#include <functional>

#include "yamabe/profile.hpp"

namespace yamabe {

// Pohozaev balance for the flat local model (metric coefficients frozen:
// conformal factor 1, vector potential 0, scalar potential h0):
//   int_{dB(0,delta)} [ (n-2)/2 v dv/dnu - (delta/2)|grad v|^2
//                       + delta (dv/dnu)^2 + (delta/pexp)|v|^pexp ] dsigma
//     = n (1/pexp - 1/2*) int_B |v|^pexp
//       + int_B (x.grad v + (n-2)/2 v) h0 v dx.
// Both sides are reported; for an exact solution with h0 = 0 and pexp = 2*
// the defect vanishes.
struct PohozaevReport {
    double delta = 0.0;
    double pexp = 0.0;
    double h0 = 0.0;
    double boundary = 0.0;          // left-hand side
    double volume_subcritical = 0.0;  // n(1/pexp - 1/2*) int |v|^pexp
    double volume_potential = 0.0;    // h0 pairing term
    double defect = 0.0;              // boundary - volume
};

PohozaevReport pohozaev_terms(const ProfilePtr& v, double pexp, double h0, double delta,
                              const QuadratureSpec& spec = {});

// Field on R^3 with value and gradient.
using Field3 = std::function<void(const std::vector<double>& x, double& value, std::vector<double>& grad)>;

// Boundary functional extracting the mass from a normalized expansion
// G = 1/(4 pi |x|) + m + beta(x), beta(0) = 0:
//   P(delta) = int_{dB(0,delta)} [ (1/2) G dG/dnu - (delta/2)|grad G|^2
//                                  + delta (dG/dnu)^2 ] dsigma.
// For beta identically 0 this equals -m/2 for every delta.
double mass_boundary_functional(const Field3& g, double delta, int sphere_rule = 64);

}  // namespace yamabe
