#pragma once

#include <cstdint>
#include <optional>

#include "yamabe/curvature.hpp"
#include "yamabe/profile.hpp"

namespace yamabe {

// (W tensor B)(V) for the Weyl tensor of S^p(1) x S^q(1) at a pole, paired
// with a profile V on R^n through the quadratic gradient contraction
//   C_{n,V} int W_{ikjl} x^k x^l d_iV d_jV dx,   C_{n,V} = 4n / (3 (n-2)^2 ||V||_{2*}^{2*}).
struct WeylProductResult {
    int p = 0, q = 0;
    double value = 0.0;           // consensus value (gradient route)
    double hessian_route = 0.0;   // integration-by-parts form
    double gradient_route = 0.0;  // direct contraction, blockwise
    double reduced_route = 0.0;   // -C3 int (r1 d2V - r2 d1V)^2, manifestly <= 0
    std::optional<double> montecarlo;  // full-tensor Monte Carlo estimate
    double montecarlo_stderr = 0.0;
    double block_cancellation = 0.0;  // sup of the C1/C2 groups, vanishes identically
    double norm_2star = 0.0;          // int |V|^{2*}
};

struct WeylProductOptions {
    QuadratureSpec quad;
    bool with_montecarlo = false;
    std::uint64_t seed = 922337;
    long mc_samples = 400000;
};

// Requires n = p + q >= 5 and p, q >= 2: below n = 5 the Weyl term is absent
// from the obstruction. Routes are cross-checked before the value is returned.
WeylProductResult weyl_otimes_b(const ProfilePtr& v, int p, int q, const WeylProductOptions& opt = {});

}  // namespace yamabe
