#include "yamabe/obstruction.hpp"

#include <cmath>
#include <json.hpp>

namespace yamabe {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "CONSISTENT";
        case Verdict::ruled_out: return "RULED_OUT";
        case Verdict::forces_lambda_zero: return "FORCES_LAMBDA_ZERO";
        case Verdict::certified_no_blowup: return "CERTIFIED_NO_BLOWUP";
    }
    return "?";
}

std::string to_string(Branch b) {
    switch (b) {
        case Branch::n5plus: return "n5plus";
        case Branch::n4: return "n4";
        case Branch::n3: return "n3";
        case Branch::section6: return "section6";
    }
    return "?";
}

std::string ObstructionReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["lambda_implied"] = lambda_implied;
    j["verdict"] = to_string(verdict);
    j["branch"] = to_string(branch);
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [k, v] : audit) a.push_back({{"term", k}, {"value", v}});
    j["audit"] = a;
    // necessary conditions only: consistency never asserts that blow-up occurs
    j["note"] = "verdicts record consistency with the necessary conditions only";
    return j.dump(2);
}

namespace {

void validate_bubble(const PointData& point, const BubbleSummary& bubble) {
    const int n = point.n;
    if (n != bubble.n) throw Error(ErrorCode::dimension_error, "point and bubble dimensions differ");
    const double expect = (n - 2.0) * sphere_area(n - 1) * bubble.lambda;
    if (std::abs(bubble.int_signed_2star_minus1 - expect) >
        1e-6 * std::max({std::abs(expect), std::abs(bubble.int_signed_2star_minus1), 1e-6}))
        throw Error(ErrorCode::inconsistent_routes,
                    "bubble summary violates the lambda normalization identity");
}

Verdict sign_verdict(double lambda, bool exactly_critical) {
    if (lambda < -kVerdictTol) return Verdict::ruled_out;
    if (exactly_critical && lambda > kVerdictTol) return Verdict::ruled_out;
    return Verdict::consistent;
}

}  // namespace

ObstructionReport implied_rate(const PointData& point, const BubbleSummary& bubble,
                               bool exactly_critical) {
    validate_bubble(point, bubble);
    const int n = point.n;
    ObstructionReport rep;
    if (n >= 5) {
        if (!point.weyl_otimes_b)
            throw Error(ErrorCode::invalid_argument, "n >= 5 requires the Weyl pairing value");
        if (!bubble.int_V2)
            throw Error(ErrorCode::invalid_argument, "n >= 5 requires int V^2 in the bubble summary");
        rep.branch = Branch::n5plus;
        const double cn = (n - 2.0) / (4.0 * (n - 1.0));
        const double slope = 4.0 * n / ((n - 2.0) * (n - 2.0)) * (*bubble.int_V2 / bubble.int_V_2star);
        rep.lambda_implied = *point.weyl_otimes_b + slope * (point.h_at_x0 - cn * point.sg_at_x0);
        rep.audit = {{"weyl_otimes_b", *point.weyl_otimes_b},
                     {"c_n", cn},
                     {"h_minus_cn_sg", point.h_at_x0 - cn * point.sg_at_x0},
                     {"slope", slope},
                     {"int_V2", *bubble.int_V2},
                     {"int_V_2star", bubble.int_V_2star}};
    } else if (n == 4) {
        rep.branch = Branch::n4;
        const double num = bubble.int_signed_2star_minus1;  // int |V|^2 V
        const double coef = num * num / (sphere_area(3) * bubble.int_V_2star);
        rep.lambda_implied = coef * (point.h_at_x0 - point.sg_at_x0 / 6.0);
        rep.audit = {{"coefficient", coef},
                     {"h_minus_sg_over_6", point.h_at_x0 - point.sg_at_x0 / 6.0},
                     {"int_signed", num},
                     {"int_V_2star", bubble.int_V_2star}};
    } else if (n == 3) {
        if (!point.mass_at_x0) throw Error(ErrorCode::invalid_argument, "n = 3 requires the mass value");
        rep.branch = Branch::n3;
        const double num = bubble.int_signed_2star_minus1;  // int |V|^4 V
        const double coef = -6.0 * num * num / bubble.int_V_2star;
        rep.lambda_implied = coef * (*point.mass_at_x0);
        rep.audit = {{"coefficient", coef}, {"mass", *point.mass_at_x0}, {"int_V_2star", bubble.int_V_2star}};
    } else {
        throw Error(ErrorCode::dimension_error, "dimension must be >= 3");
    }
    rep.verdict = sign_verdict(rep.lambda_implied, exactly_critical);
    return rep;
}

ObstructionReport rule_out_by_decay(const PointData& point, const BubbleSummary& bubble) {
    validate_bubble(point, bubble);
    const int n = point.n;
    if (n != 3 && n != 4)
        throw Error(ErrorCode::dimension_error, "the decay rule-out applies in dimensions 3 and 4 only");
    ObstructionReport rep;
    rep.branch = n == 3 ? Branch::n3 : Branch::n4;
    bool hypothesis;
    if (n == 3) {
        if (!point.mass_at_x0) throw Error(ErrorCode::invalid_argument, "n = 3 requires the mass value");
        hypothesis = *point.mass_at_x0 > kVerdictTol;
        rep.audit.emplace_back("mass", *point.mass_at_x0);
    } else {
        hypothesis = point.h_at_x0 - point.sg_at_x0 / 6.0 < -kVerdictTol;
        rep.audit.emplace_back("h_minus_sg_over_6", point.h_at_x0 - point.sg_at_x0 / 6.0);
    }
    rep.audit.emplace_back("lambda_V", bubble.lambda);
    if (!hypothesis) {
        rep.verdict = Verdict::consistent;  // hypothesis fails: no constraint
        return rep;
    }
    rep.verdict = std::abs(bubble.lambda) <= kVerdictTol ? Verdict::forces_lambda_zero : Verdict::ruled_out;
    return rep;
}

double phi_ell(double h_at_xi, double sg_at_xi, int n, int ell) {
    if (ell < 1) throw Error(ErrorCode::invalid_argument, "ell must be >= 1");
    const double cn = (n - 2.0) / (4.0 * (n - 1.0));
    return h_at_xi - cn * (1.0 + (n - 4.0) * ell / (3.0 * n)) * sg_at_xi;
}

namespace {

double cutoff(double s) {  // 1 on s <= 1, 0 on s >= 2, smooth between
    if (s <= 1.0) return 1.0;
    if (s >= 2.0) return 0.0;
    const auto f = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    return f(2.0 - s) / (f(2.0 - s) + f(s - 1.0));
}

}  // namespace

ObstructionReport certify_no_blowup(int n, double t, const std::vector<double>& xi0, double delta,
                                    const QuadratureSpec& spec) {
    if (n < 5) throw Error(ErrorCode::dimension_error, "the certificate construction needs n >= 5");
    const double tmax = 1.0 + (n - 4.0) / (3.0 * n);
    if (!(t > 1.0) || !(t < tmax))
        throw Error(ErrorCode::invalid_argument, "t must lie strictly between 1 and 1 + (n-4)/(3n)");
    if (!(delta > 0.0)) throw Error(ErrorCode::invalid_argument, "delta must be positive");
    if (static_cast<int>(xi0.size()) != n)
        throw Error(ErrorCode::dimension_error, "xi0 must be an n-vector");

    const double cn = (n - 2.0) / (4.0 * (n - 1.0));
    const double sg = -1.0;  // constant scalar curvature of the background

    const auto h = [&](const std::vector<double>& x) {
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) d2 += (x[i] - xi0[i]) * (x[i] - xi0[i]);
        const double d = std::sqrt(d2);
        const double chi = cutoff(d / delta);
        return 1.0 - chi + chi * (-t * cn + d2);
    };

    ObstructionReport rep;
    rep.branch = Branch::section6;

    const double h0 = h(xi0);
    rep.audit.emplace_back("h_at_xi0", h0);
    if (h0 != -t * cn) throw Error(ErrorCode::non_convergent, "h(xi0) misses its designed value");

    // critical point structure of h at xi0, by central differences
    const double fd = 1e-5;
    double grad_sup = 0.0;
    double hess_offdiag = 0.0, hess_diag_err = 0.0;
    std::vector<double> xp(xi0), xm(xi0);
    for (int i = 0; i < n; ++i) {
        xp = xi0;
        xm = xi0;
        xp[i] += fd;
        xm[i] -= fd;
        grad_sup = std::max(grad_sup, std::abs(h(xp) - h(xm)) / (2.0 * fd));
        hess_diag_err =
            std::max(hess_diag_err, std::abs((h(xp) - 2.0 * h0 + h(xm)) / (fd * fd) - 2.0));
        for (int j = i + 1; j < n; ++j) {
            std::vector<double> a(xi0), b(xi0), c(xi0), d(xi0);
            a[i] += fd; a[j] += fd;
            b[i] += fd; b[j] -= fd;
            c[i] -= fd; c[j] += fd;
            d[i] -= fd; d[j] -= fd;
            hess_offdiag =
                std::max(hess_offdiag, std::abs((h(a) - h(b) - h(c) + h(d)) / (4.0 * fd * fd)));
        }
    }
    rep.audit.emplace_back("grad_sup", grad_sup);
    rep.audit.emplace_back("hessian_diag_defect", hess_diag_err);
    rep.audit.emplace_back("hessian_offdiag_sup", hess_offdiag);
    if (grad_sup > 1e-8) throw Error(ErrorCode::non_convergent, "xi0 is not a critical point of h");
    if (hess_diag_err > 1e-4 || hess_offdiag > 1e-4)
        throw Error(ErrorCode::non_convergent, "Hessian of h at xi0 is not 2 x identity");

    // coercivity proxy: ||h - 1||_{L^{n/2}} = C delta^2; C is reported
    const double norm_pow = sphere_area(n - 1) *
                            integrate_1d_value(
                                [&](double d) {
                                    std::vector<double> x(xi0);
                                    x[0] += d;
                                    return std::pow(std::abs(h(x) - 1.0), n / 2.0) * std::pow(d, n - 1);
                                },
                                0.0, 2.0 * delta, spec);
    const double lnorm = std::pow(norm_pow, 2.0 / n);
    rep.audit.emplace_back("l_n_half_norm", lnorm);
    rep.audit.emplace_back("coercivity_C", lnorm / (delta * delta));

    // phi_ell positivity and monotone growth at xi0
    double prev = 0.0;
    for (int ell = 1; ell <= 50; ++ell) {
        const double phi = phi_ell(h0, sg, n, ell);
        if (!(phi > 0.0)) throw Error(ErrorCode::non_convergent, "phi_ell fails to be positive at xi0");
        if (ell > 1 && !(phi > prev)) throw Error(ErrorCode::non_convergent, "phi_ell fails to increase");
        prev = phi;
    }
    rep.audit.emplace_back("phi_1", phi_ell(h0, sg, n, 1));
    rep.audit.emplace_back("phi_50", phi_ell(h0, sg, n, 50));

    // Weyl vanishes on the background, so a blow-up would force
    // h(xi0) - c_n S_g(xi0) >= 0; the construction makes it negative.
    const double contra = h0 - cn * sg;  // = h0 + c_n = c_n (1 - t)
    rep.audit.emplace_back("h_plus_cn", contra);
    if (!(contra < -kVerdictTol))
        throw Error(ErrorCode::non_convergent, "sign contradiction fails; no certificate");

    rep.lambda_implied = contra;  // the quantity whose sign closes the argument
    rep.verdict = Verdict::certified_no_blowup;
    return rep;
}

}  // namespace yamabe
