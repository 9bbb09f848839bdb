#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "yamabe/curvature.hpp"
#include "yamabe/ding.hpp"
#include "yamabe/invariants.hpp"
#include "yamabe/mass_s3.hpp"
#include "yamabe/obstruction.hpp"
#include "yamabe/pohozaev.hpp"
#include "yamabe/weyl_product.hpp"

using nlohmann::json;
using namespace yamabe;

namespace {

// temp + rename so that readers never observe a partial document
void write_atomic(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error(ErrorCode::io_error, "cannot open " + tmp + " for writing");
        out << text << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error(ErrorCode::io_error, "cannot move " + tmp + " into place");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ProfilePtr load_profile(const std::string& bubble_path, int standard_dim, double mu) {
    if (!bubble_path.empty()) return profile_from_json(read_file(bubble_path));
    if (standard_dim > 0) return standard_bubble(standard_dim, mu);
    throw Error(ErrorCode::invalid_argument, "provide either --bubble FILE or --standard N");
}

// optional config file: tolerances and a default seed
struct RunConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::uint64_t seed = 922337;
};

RunConfig load_config() {
    RunConfig cfg;
    const char* path = std::getenv("YAMABE_CONFIG");
    if (!path || !*path) return cfg;
    const json j = json::parse(read_file(path));
    cfg.rel_tol = j.value("rel_tol", cfg.rel_tol);
    cfg.abs_tol = j.value("abs_tol", cfg.abs_tol);
    cfg.seed = j.value("seed", cfg.seed);
    return cfg;
}

int exit_code_for(const Error& e) {
    switch (e.code) {
        case ErrorCode::invalid_argument:
        case ErrorCode::dimension_error:
        case ErrorCode::io_error: return 2;
        default: return 3;
    }
}

void emit_latitude_csv(const LatitudeSolution& sol, const std::string& path) {
    std::ostringstream os;
    os << "t,u,du\n";
    os.precision(17);
    for (std::size_t i = 0; i < sol.t.size(); ++i)
        os << sol.t[i] << "," << sol.u[i] << "," << sol.du[i] << "\n";
    write_atomic(path, os.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sign-changing Yamabe bubbles and blow-up obstruction functionals"};
    app.require_subcommand(1);
    RunConfig cfg;
    try {
        cfg = load_config();
    } catch (const std::exception& e) {
        std::cerr << "error: bad config: " << e.what() << "\n";
        return 2;
    }

    std::string out = "-", csv, bubble_path;
    int standard_dim = 0;
    double mu = 1.0;

    auto* ding = app.add_subcommand("ding", "solve the latitude ODE and pull back to R^n");
    int dp = 2, dq = 3, dnodes = 1;
    ding->add_option("--p", dp, "first factor dimension");
    ding->add_option("--q", dq, "second factor dimension");
    ding->add_option("--nodes", dnodes, "interior node count of the latitude solution");
    ding->add_option("--out", out, "output JSON path ('-' = stdout)");
    ding->add_option("--csv", csv, "write t,u,du plot data");

    auto* wp = app.add_subcommand("weyl-product", "Weyl pairing for a product-sphere Weyl tensor");
    int wpp = 2, wpq = 3;
    bool with_mc = false;
    long mc_samples = 400000;
    std::uint64_t seed = 0;
    bool seed_set = false;
    wp->add_option("--p", wpp);
    wp->add_option("--q", wpq);
    wp->add_option("--bubble", bubble_path, "profile JSON");
    wp->add_option("--standard", standard_dim, "use the standard bubble in dimension N");
    wp->add_option("--mu", mu, "scale of the standard bubble");
    wp->add_flag("--mc", with_mc, "add the Monte Carlo route");
    wp->add_option("--samples", mc_samples);
    wp->add_option("--seed", seed, "seed for the Monte Carlo route")->each([&](const std::string&) {
        seed_set = true;
    });
    wp->add_option("--out", out);

    auto* mass = app.add_subcommand("mass3d", "Green's function mass on S^3");
    double h0 = 0.5;
    std::string sweep;
    mass->add_option("--h0", h0);
    mass->add_option("--sweep", sweep, "lo:hi:npts mass sweep, CSV output");
    mass->add_option("--out", out);

    auto* poho = app.add_subcommand("pohozaev", "Pohozaev balance of a profile over a ball");
    double pexp = 0.0, ph0 = 0.0, pdelta = 1.0;
    poho->add_option("--bubble", bubble_path);
    poho->add_option("--standard", standard_dim);
    poho->add_option("--mu", mu);
    poho->add_option("--pexp", pexp, "nonlinearity exponent (default 2*)");
    poho->add_option("--h0", ph0, "frozen potential");
    poho->add_option("--delta", pdelta, "ball radius");
    poho->add_option("--out", out);

    auto* check = app.add_subcommand("check", "evaluate the necessary blow-up conditions");
    // --h is part of the interface here, so help keeps only its long form
    check->set_help_flag("--help", "print help");
    int cdim = 5;
    double ch = 0.0, csg = 0.0, cmass = 0.0;
    bool has_mass = false, exactly_critical = false, by_decay = false, assert_ok = false;
    std::string weyl_spec = "zero";
    check->add_option("--dim", cdim);
    check->add_option("--h", ch, "h at the concentration point");
    check->add_option("--sg", csg, "scalar curvature at the concentration point");
    check->add_option("--weyl", weyl_spec, "zero | product:PxQ | value:<number>");
    check->add_option("--mass", cmass, "Green mass (n=3)")->each([&](const std::string&) {
        has_mass = true;
    });
    check->add_option("--bubble", bubble_path);
    check->add_option("--standard", standard_dim);
    check->add_option("--mu", mu);
    check->add_flag("--exactly-critical", exactly_critical, "assert p_eps = 2* throughout");
    check->add_flag("--by-decay", by_decay, "use the n=3,4 decay rule-out");
    check->add_flag("--assert-consistent", assert_ok, "exit 4 when the verdict is RULED_OUT");
    check->add_option("--out", out);

    auto* cert = app.add_subcommand("certify", "emit the non-blow-up certificate");
    int ndim = 5;
    double t = 1.05, cdelta = 0.1;
    cert->add_option("--dim", ndim);
    cert->add_option("--t", t);
    cert->add_option("--delta", cdelta);
    cert->add_option("--out", out);

    auto* inv = app.add_subcommand("invariants", "run the cross-cutting property suite");
    (void)inv;

    auto* curv = app.add_subcommand("curvature", "product-sphere curvature tensors");
    int kp = 2;
    int kq = 3;
    bool riemann = false;
    curv->add_option("--p", kp);
    curv->add_option("--q", kq);
    curv->add_flag("--riemann", riemann, "emit the Riemann tensor instead of Weyl");
    curv->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    try {
        QuadratureSpec qs;
        qs.rel_tol = cfg.rel_tol;
        qs.abs_tol = cfg.abs_tol;

        if (*ding) {
            const auto sols = find_solutions(dp, dq, dnodes);
            for (const auto& s : sols) {
                if (s.nodes != dnodes) continue;
                if (!csv.empty()) emit_latitude_csv(s, csv);
                write_atomic(out, profile_to_json(pullback(s)));
                return 0;
            }
            throw Error(ErrorCode::no_sign_change,
                        "no latitude solution with the requested node count was found");
        }

        if (*wp) {
            const ProfilePtr v = load_profile(bubble_path, standard_dim, mu);
            WeylProductOptions opt;
            opt.quad = qs;
            opt.with_montecarlo = with_mc;
            opt.mc_samples = mc_samples;
            if (with_mc && !seed_set)
                throw Error(ErrorCode::invalid_argument, "--mc requires an explicit --seed");
            opt.seed = seed_set ? seed : cfg.seed;
            const WeylProductResult r = weyl_otimes_b(v, wpp, wpq, opt);
            json j{{"schema_version", 1},        {"p", r.p},
                   {"q", r.q},                   {"value", r.value},
                   {"hessian_route", r.hessian_route}, {"gradient_route", r.gradient_route},
                   {"reduced_route", r.reduced_route}, {"block_cancellation", r.block_cancellation},
                   {"int_V_2star", r.norm_2star}};
            if (r.montecarlo) {
                j["montecarlo"] = *r.montecarlo;
                j["montecarlo_stderr"] = r.montecarlo_stderr;
            }
            write_atomic(out, j.dump(2));
            return 0;
        }

        if (*mass) {
            if (!sweep.empty()) {
                double lo, hi;
                int npts;
                if (std::sscanf(sweep.c_str(), "%lf:%lf:%d", &lo, &hi, &npts) != 3 || npts < 2)
                    throw Error(ErrorCode::invalid_argument, "--sweep expects lo:hi:npts");
                std::ostringstream os;
                os.precision(17);
                os << "h0,mass\n";
                for (int i = 0; i < npts; ++i) {
                    const double x = lo + (hi - lo) * i / (npts - 1);
                    os << x << "," << mass_closed_form(x) << "\n";
                }
                write_atomic(out, os.str());
                return 0;
            }
            const MassResult r = s3_mass(h0);
            write_atomic(out, json{{"schema_version", 1},
                                   {"h0", r.h0},
                                   {"mass", r.mass},
                                   {"mass_ode", r.mass_ode},
                                   {"leading_norm", r.leading_norm}}
                                  .dump(2));
            return 0;
        }

        if (*poho) {
            const ProfilePtr v = load_profile(bubble_path, standard_dim, mu);
            if (pexp <= 0.0) pexp = v->critical_exponent();
            const PohozaevReport r = pohozaev_terms(v, pexp, ph0, pdelta, qs);
            write_atomic(out, json{{"schema_version", 1},
                                   {"delta", r.delta},
                                   {"pexp", r.pexp},
                                   {"h0", r.h0},
                                   {"boundary", r.boundary},
                                   {"volume_subcritical", r.volume_subcritical},
                                   {"volume_potential", r.volume_potential},
                                   {"defect", r.defect}}
                                  .dump(2));
            return 0;
        }

        if (*check) {
            const ProfilePtr v = load_profile(bubble_path, standard_dim, mu);
            if (v->n() != cdim) throw Error(ErrorCode::dimension_error, "--dim disagrees with the bubble");
            PointData point;
            point.n = cdim;
            point.h_at_x0 = ch;
            point.sg_at_x0 = csg;
            if (has_mass) point.mass_at_x0 = cmass;
            BubbleSummary bub = functionals(v, qs, cdim >= 5);
            if (cdim >= 5) {
                if (weyl_spec == "zero") {
                    point.weyl_otimes_b = 0.0;
                } else if (weyl_spec.rfind("value:", 0) == 0) {
                    point.weyl_otimes_b = std::stod(weyl_spec.substr(6));
                } else {
                    int pp, qq;
                    if (std::sscanf(weyl_spec.c_str(), "product:%dx%d", &pp, &qq) != 2)
                        throw Error(ErrorCode::invalid_argument,
                                    "--weyl expects zero, value:<num> or product:PxQ");
                    WeylProductOptions opt;
                    opt.quad = qs;
                    point.weyl_otimes_b = weyl_otimes_b(v, pp, qq, opt).value;
                }
            }
            const ObstructionReport rep =
                by_decay ? rule_out_by_decay(point, bub) : implied_rate(point, bub, exactly_critical);
            write_atomic(out, rep.to_json());
            if (assert_ok && rep.verdict == Verdict::ruled_out) return 4;
            return 0;
        }

        if (*cert) {
            const ObstructionReport rep =
                certify_no_blowup(ndim, t, std::vector<double>(ndim, 0.0), cdelta, qs);
            write_atomic(out, rep.to_json());
            return 0;
        }

        if (*inv) {
            const auto checks = run_invariants();
            bool all = true;
            for (const auto& c : checks) {
                std::printf("%-38s %s  (measure %.3e, bound %.3e)\n", c.name.c_str(),
                            c.pass ? "pass" : "FAIL", c.measure, c.bound);
                all = all && c.pass;
            }
            return all ? 0 : 3;
        }

        if (*curv) {
            const Tensor4 w = riemann ? product_sphere_riemann(kp, kq) : product_sphere_weyl(kp, kq);
            write_atomic(out, w.to_json());
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
