#pragma once

#include <string>
#include <vector>

namespace yamabe {

struct InvariantCheck {
    std::string name;
    bool pass = false;
    double measure = 0.0;  // defect or discrepancy behind the verdict
    double bound = 0.0;
};

// Cross-cutting property suite: derivative propagation against finite
// differences, radial vs biradial quadrature agreement, bit-level
// determinism of seeded paths, curvature symmetry sweeps.
std::vector<InvariantCheck> run_invariants();

}  // namespace yamabe
