// Release gate: one line per criterion, nonzero exit if any of them fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "yamabe/curvature.hpp"
#include "yamabe/ding.hpp"
#include "yamabe/invariants.hpp"
#include "yamabe/mass_s3.hpp"
#include "yamabe/obstruction.hpp"
#include "yamabe/pohozaev.hpp"
#include "yamabe/profile.hpp"
#include "yamabe/weyl_product.hpp"

using namespace yamabe;
namespace nb = std::numbers;

namespace {

int g_failures = 0;

void criterion(int id, const char* label, double budget_s, const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    if (!ok) ++g_failures;
    std::printf("[%2d] %s  %6.1fs  %s%s%s\n", id, ok ? "PASS" : "FAIL", dt, label,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1e-300, std::abs(a), std::abs(b)});
}

}  // namespace

int main() {
    // shared expensive artifacts
    std::vector<LatitudeSolution> ding23;
    ProfilePtr ding1;  // 1-node (2,3) pullback

    criterion(1, "lambda identity and dual-route agreement, n = 3..7", 5.0, [&](std::string& d) {
        for (int n : {3, 4, 5, 6, 7}) {
            ProfilePtr v = standard_bubble(n);
            const double expect = std::pow(n * (n - 2.0), (n - 2.0) / 2.0);
            if (!rel_close(lambda_invariant(v), expect, 1e-6)) {
                d = "identity failed at n = " + std::to_string(n);
                return false;
            }
            if (!rel_close(lambda_quadrature_route(v), lambda_kelvin_route(v), 1e-5)) {
                d = "routes disagree at n = " + std::to_string(n);
                return false;
            }
        }
        return true;
    });

    criterion(2, "kelvin transform suite (isometry, involution, bubble image)", 10.0,
              [&](std::string& d) {
        for (int n : {3, 5}) {
            ProfilePtr v = standard_bubble(n);
            ProfilePtr vk = kelvin(v);
            const double ts = 2.0 * n / (n - 2.0);
            if (!rel_close(dirichlet_energy(vk), dirichlet_energy(v), 1e-6) ||
                !rel_close(lp_norm_pow(vk, ts), lp_norm_pow(v, ts), 1e-6)) {
                d = "norm isometry failed at n = " + std::to_string(n);
                return false;
            }
            ProfilePtr vkk = kelvin(vk);
            ProfilePtr img = standard_bubble(n, 1.0 / (n * (n - 2.0)));
            for (double r : {0.05, 0.4, 1.0, 3.0, 20.0}) {
                if (std::abs(vkk->jet(r, 0.0).v - v->jet(r, 0.0).v) > 1e-8) {
                    d = "involution failed at n = " + std::to_string(n);
                    return false;
                }
                if (std::abs(vk->jet(r, 0.0).v - img->jet(r, 0.0).v) > 1e-10) {
                    d = "kelvin image is not the 1/(n(n-2)) bubble at n = " + std::to_string(n);
                    return false;
                }
            }
        }
        return true;
    });

    criterion(3, "ding pipeline for (2,3): a*, nodal ladder, constant pullback", 60.0,
              [&](std::string& d) {
        ding23 = find_solutions(2, 3, 2);
        if (ding23.size() != 3) {
            d = "expected solutions with 0, 1, 2 nodes";
            return false;
        }
        if (!rel_close(ding23[0].a0, std::pow(15.0 / 4.0, 0.75), 1e-6)) {
            d = "a* missed";
            return false;
        }
        if (!(ding23[0].energy < ding23[1].energy && ding23[1].energy < ding23[2].energy)) {
            d = "sphere energies not increasing";
            return false;
        }
        for (const auto& s : ding23) {
            if (flat_residual(pullback(s)) >= 1e-6) {
                d = "flat residual too large at " + std::to_string(s.nodes) + " nodes";
                return false;
            }
        }
        ding1 = pullback(ding23[1]);
        ProfilePtr c = pullback(ding23[0]);
        ProfilePtr b = standard_bubble(5, 1.0 / std::sqrt(15.0));
        for (double r1 : {0.0, 0.5, 1.0, 4.0})
            for (double r2 : {0.2, 1.1, 3.0})
                if (std::abs(c->jet(r1, r2).v - b->jet(r1, r2).v) > 1e-8) {
                    d = "constant pullback is not the scaled bubble";
                    return false;
                }
        return true;
    });

    criterion(4, "weyl pairing vanishes for the radial bubble", 30.0, [&](std::string& d) {
        WeylProductResult r = weyl_otimes_b(standard_bubble(5), 2, 3);
        if (std::abs(r.value) >= 1e-8 || std::abs(r.gradient_route) >= 1e-8 ||
            std::abs(r.hessian_route) >= 1e-8 || std::abs(r.reduced_route) >= 1e-8) {
            d = "nonzero pairing on a radial profile";
            return false;
        }
        return true;
    });

    criterion(5, "weyl pairing negative for 1-node ding, four routes agree", 600.0,
              [&](std::string& d) {
        if (!ding1) ding1 = pullback(find_solutions(2, 3, 1)[1]);
        WeylProductOptions opt;
        opt.with_montecarlo = true;
        opt.seed = 424242;
        opt.mc_samples = 800000;
        WeylProductResult r = weyl_otimes_b(ding1, 2, 3, opt);
        if (!(r.value < 0.0)) {
            d = "pairing not negative";
            return false;
        }
        if (!rel_close(r.hessian_route, r.gradient_route, 1e-3) ||
            !rel_close(r.gradient_route, r.reduced_route, 1e-3)) {
            d = "deterministic routes disagree";
            return false;
        }
        if (!r.montecarlo || std::abs(*r.montecarlo - r.value) > 3.0 * r.montecarlo_stderr ||
            r.montecarlo_stderr > 1e-2 * std::abs(r.value)) {
            d = "monte carlo route outside three standard errors";
            return false;
        }
        return true;
    });

    criterion(6, "scaling covariance of the weyl pairing, mu in {0.5, 2}", 120.0,
              [&](std::string& d) {
        if (!ding1) ding1 = pullback(find_solutions(2, 3, 1)[1]);
        const double base = weyl_otimes_b(ding1, 2, 3).value;
        for (double mu : {0.5, 2.0}) {
            const double scaled = weyl_otimes_b(rescaled(ding1, mu), 2, 3).value;
            if (!rel_close(scaled, mu * mu * base, 1e-5)) {
                d = "covariance failed at mu = " + std::to_string(mu);
                return false;
            }
        }
        return true;
    });

    criterion(7, "green function mass law on the round three-sphere", 10.0, [&](std::string& d) {
        MassResult z = s3_mass(0.75);
        if (std::abs(z.mass) > 1e-15 || std::abs(z.mass_ode) > 1e-6) {
            d = "mass does not vanish at h0 = 3/4";
            return false;
        }
        MassResult half = s3_mass(0.5);
        // the reference value is quoted to ~5 digits; the dual-route bound is the sharp one
        if (std::abs(half.mass - 0.042849) > 5e-5 || std::abs(half.mass - half.mass_ode) > 1e-8) {
            d = "h0 = 1/2 value off";
            return false;
        }
        MassResult one = s3_mass(1.0);
        if (std::abs(one.mass + 1.0 / (4.0 * nb::pi * nb::pi)) > 1e-12 ||
            std::abs(one.mass - one.mass_ode) > 1e-8) {
            d = "h0 = 1 value off";
            return false;
        }
        int flips = 0;
        double prev = 0.0, prev_h = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double h0 = 0.1 + (1.4 - 0.1) * i / 19.0;
            const double m = s3_mass(h0).mass;
            if (i > 0 && prev * m < 0.0) {
                ++flips;
                if (!(prev_h < 0.75 && h0 > 0.75)) {
                    d = "sign change not bracketing 3/4";
                    return false;
                }
            }
            prev = m;
            prev_h = h0;
        }
        if (flips != 1) {
            d = "expected exactly one sign change on the sweep";
            return false;
        }
        return true;
    });

    criterion(8, "pohozaev balance and mass boundary functional", 30.0, [&](std::string& d) {
        ProfilePtr b = standard_bubble(5);
        for (double delta : {0.5, 1.0, 2.0}) {
            PohozaevReport rep = pohozaev_terms(b, b->critical_exponent(), 0.0, delta);
            const double norm = std::max(1.0, std::abs(rep.volume_subcritical) +
                                                  std::abs(rep.volume_potential) +
                                                  std::abs(rep.boundary));
            if (std::abs(rep.defect) / norm >= 1e-8) {
                d = "bubble defect too large at delta = " + std::to_string(delta);
                return false;
            }
        }
        if (!ding1) ding1 = pullback(find_solutions(2, 3, 1)[1]);
        PohozaevReport rep = pohozaev_terms(ding1, ding1->critical_exponent(), 0.0, 1.0);
        if (std::abs(rep.defect) >= 1e-5) {
            d = "ding defect too large";
            return false;
        }
        const double m = 0.03;
        Field3 g = [&](const std::vector<double>& x, double& val, std::vector<double>& grad) {
            const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
            val = 1.0 / (4.0 * nb::pi * r) + m;
            const double c = -1.0 / (4.0 * nb::pi * r * r * r);
            grad = {c * x[0], c * x[1], c * x[2]};
        };
        for (double delta : {0.05, 0.1, 0.2, 0.5, 1.0})
            if (std::abs(mass_boundary_functional(g, delta) + 0.5 * m) > 1e-10) {
                d = "pure expansion does not give -m/2";
                return false;
            }
        Field3 gb = [&](const std::vector<double>& x, double& val, std::vector<double>& grad) {
            const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            const double r = std::sqrt(r2);
            val = 1.0 / (4.0 * nb::pi * r) + m + r2;
            const double c = -1.0 / (4.0 * nb::pi * r * r * r);
            grad = {c * x[0] + 2 * x[0], c * x[1] + 2 * x[1], c * x[2] + 2 * x[2]};
        };
        double prev_err = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double delta = 0.2 / std::pow(2.0, k);
            const double err = std::abs(mass_boundary_functional(gb, delta) + 0.5 * m);
            if (k > 0 && err > 0.6 * prev_err) {
                d = "quadratic remainder not O(delta)";
                return false;
            }
            prev_err = err;
        }
        return true;
    });

    criterion(9, "obstruction verdicts and coefficient identities", 5.0, [&](std::string& d) {
        if (!ding1) ding1 = pullback(find_solutions(2, 3, 1)[1]);
        const double c5 = 3.0 / 16.0;
        BubbleSummary ds = functionals(ding1);
        ds.weyl_otimes_b = weyl_otimes_b(ding1, 2, 3).value;
        PointData pa{5, c5 * 8.0 - 0.2, 8.0, ds.weyl_otimes_b, std::nullopt};
        if (implied_rate(pa, ds).verdict != Verdict::ruled_out) {
            d = "product sphere scenario not ruled out";
            return false;
        }
        ProfilePtr v3 = standard_bubble(3);
        BubbleSummary s3 = functionals(v3, {}, false);
        PointData pb{3, 0.0, 0.0, std::nullopt, s3_mass(0.5).mass};
        ObstructionReport rb = implied_rate(pb, s3);
        if (rb.verdict != Verdict::ruled_out) {
            d = "positive mass scenario not ruled out";
            return false;
        }
        const double expect3 = -96.0 * nb::pi * nb::pi * s3.lambda * s3.lambda *
                               *pb.mass_at_x0 / lp_norm_pow(v3, 6.0);
        if (!rel_close(rb.lambda_implied, expect3, 1e-6)) {
            d = "n = 3 coefficient identity failed";
            return false;
        }
        ProfilePtr v4 = standard_bubble(4);
        BubbleSummary s4 = functionals(v4, {}, false);
        PointData p4{4, 1.0, 0.0, std::nullopt, std::nullopt};
        const double expect4 =
            4.0 * sphere_area(3) * s4.lambda * s4.lambda / lp_norm_pow(v4, 4.0);
        if (!rel_close(implied_rate(p4, s4).lambda_implied, expect4, 1e-6)) {
            d = "n = 4 coefficient identity failed";
            return false;
        }
        BubbleSummary sb = functionals(standard_bubble(5));
        sb.weyl_otimes_b = 0.0;
        PointData pc{5, c5 * 8.0, 8.0, 0.0, std::nullopt};
        ObstructionReport rc = implied_rate(pc, sb);
        if (rc.verdict != Verdict::consistent || std::abs(rc.lambda_implied) > 1e-12) {
            d = "neutral case not consistent with zero rate";
            return false;
        }
        return true;
    });

    criterion(10, "no-blowup certificates in the admissible t window", 5.0, [&](std::string& d) {
        for (int n : {5, 6, 7}) {
            const double width = (n - 4.0) / (3.0 * n);
            for (double frac : {0.25, 0.5, 0.75}) {
                ObstructionReport rep =
                    certify_no_blowup(n, 1.0 + frac * width, std::vector<double>(n, 0.0), 0.3);
                if (rep.verdict != Verdict::certified_no_blowup) {
                    d = "certificate refused at n = " + std::to_string(n);
                    return false;
                }
            }
            for (double t : {1.0, 1.0 + 1.5 * width}) {
                try {
                    certify_no_blowup(n, t, std::vector<double>(n, 0.0), 0.3);
                    d = "inadmissible t accepted at n = " + std::to_string(n);
                    return false;
                } catch (const Error&) {
                }
            }
        }
        return true;
    });

    criterion(11, "full invariants suite", 900.0, [&](std::string& d) {
        for (const InvariantCheck& c : run_invariants()) {
            if (!c.pass) {
                d = "failed: " + c.name;
                return false;
            }
        }
        return true;
    });

    if (g_failures > 0) {
        std::printf("%d criteria failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
