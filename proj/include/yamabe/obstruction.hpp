#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "yamabe/profile.hpp"

namespace yamabe {

// Geometric data at the candidate concentration point x0.
struct PointData {
    int n = 0;
    double h_at_x0 = 0.0;
    double sg_at_x0 = 0.0;
    // Weyl pairing value Weyl tensor B of the candidate bubble; required for
    // n >= 5 (0 is legitimate: locally conformally flat, or a radial bubble).
    std::optional<double> weyl_otimes_b;
    std::optional<double> mass_at_x0;  // n = 3 only
};

enum class Verdict { consistent, ruled_out, forces_lambda_zero, certified_no_blowup };
enum class Branch { n5plus, n4, n3, section6 };

std::string to_string(Verdict v);
std::string to_string(Branch b);

struct ObstructionReport {
    double lambda_implied = 0.0;
    Verdict verdict = Verdict::consistent;
    Branch branch = Branch::n5plus;
    std::vector<std::pair<std::string, double>> audit;
    std::string to_json() const;
};

// Deadband on sign decisions: an implied rate of exactly 0 is legitimate
// (exactly-critical families), so the verdict needs a band around 0.
inline constexpr double kVerdictTol = 1e-9;

// Implied blow-up rate Lambda from the necessary conditions; the verdict
// records only consistency (the conditions are necessary, never sufficient).
// With exactly_critical set, the caller asserts p_eps = 2* throughout and the
// rate must vanish.
ObstructionReport implied_rate(const PointData& point, const BubbleSummary& bubble,
                               bool exactly_critical = false);

// Dimensions 3 and 4: a sign condition on the point data alone forces
// int |V|^{2*-2} V = 0 for any admissible bubble.
ObstructionReport rule_out_by_decay(const PointData& point, const BubbleSummary& bubble);

// phi_ell(xi) = h(xi) - c_n (1 + (n-4) ell / (3n)) S_g(xi)
double phi_ell(double h_at_xi, double sg_at_xi, int n, int ell);

// Non-blow-up certificate on a locally conformally flat background with
// S_g = -1: builds h_delta equal to -t c_n + d^2 near xi0 (glued to the
// constant 1), checks its critical-point structure, the L^{n/2} smallness
// proxy, positivity of phi_ell for ell = 1..50 and the final sign
// contradiction h(xi0) + c_n < 0.
ObstructionReport certify_no_blowup(int n, double t, const std::vector<double>& xi0, double delta,
                                    const QuadratureSpec& spec = {});

}  // namespace yamabe
