#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "yamabe/ding.hpp"
#include "yamabe/mass_s3.hpp"
#include "yamabe/obstruction.hpp"
#include "yamabe/pohozaev.hpp"
#include "yamabe/profile.hpp"
#include "yamabe/weyl_product.hpp"

namespace py = pybind11;
using namespace yamabe;

PYBIND11_MODULE(_yamabe, m) {
    m.doc() = "sign-changing Yamabe profiles and blow-up obstruction functionals";

    py::register_exception<Error>(m, "NumericsError");

    // the C++ side hands out shared_ptr<const Profile>; wrap it in a handle
    struct Handle {
        ProfilePtr ptr;
    };

    py::class_<Handle>(m, "Profile")
        .def_property_readonly("n", [](const Handle& h) { return h.ptr->n(); })
        .def_property_readonly("radial", [](const Handle& h) { return h.ptr->radial(); })
        .def_property_readonly("critical_exponent",
                               [](const Handle& h) { return h.ptr->critical_exponent(); })
        .def("value",
             [](const Handle& h, double r1, double r2) { return h.ptr->jet(r1, r2).v; },
             py::arg("r1"), py::arg("r2") = 0.0)
        .def("jet",
             [](const Handle& h, double r1, double r2) {
                 const Jet2 j = h.ptr->jet(r1, r2);
                 return py::make_tuple(j.v, j.d1, j.d2, j.d11, j.d12, j.d22);
             },
             py::arg("r1"), py::arg("r2"))
        .def("__repr__", [](const Handle& h) {
            return "<Profile n=" + std::to_string(h.ptr->n()) + " generator=" + h.ptr->generator() +
                   ">";
        });

    m.def("standard_bubble",
          [](int n, double mu, int sign) { return Handle{standard_bubble(n, mu, sign)}; },
          py::arg("n"), py::arg("mu") = 1.0, py::arg("sign") = 1);
    m.def("kelvin", [](const Handle& h) { return Handle{kelvin(h.ptr)}; });
    m.def("negated", [](const Handle& h) { return Handle{negated(h.ptr)}; });
    m.def("rescaled", [](const Handle& h, double mu) { return Handle{rescaled(h.ptr, mu)}; },
          py::arg("v"), py::arg("mu"));

    m.def("lambda_invariant", [](const Handle& h) { return lambda_invariant(h.ptr); });
    m.def("alpha_invariant", [](const Handle& h) { return alpha_invariant(h.ptr); });
    m.def("dirichlet_energy", [](const Handle& h) { return dirichlet_energy(h.ptr); });
    m.def("lp_norm_pow", [](const Handle& h, double p) { return lp_norm_pow(h.ptr, p); },
          py::arg("v"), py::arg("p"));

    py::class_<BubbleSummary>(m, "BubbleSummary")
        .def_readonly("n", &BubbleSummary::n)
        .def_readonly("lambda_", &BubbleSummary::lambda)
        .def_readonly("alpha", &BubbleSummary::alpha)
        .def_readonly("int_V2", &BubbleSummary::int_V2)
        .def_readonly("int_V_2star", &BubbleSummary::int_V_2star)
        .def_readonly("int_signed_2star_minus1", &BubbleSummary::int_signed_2star_minus1)
        .def_readonly("int_grad2", &BubbleSummary::int_grad2)
        .def_readwrite("weyl_otimes_b", &BubbleSummary::weyl_otimes_b);
    m.def("functionals",
          [](const Handle& h, bool want_V2) { return functionals(h.ptr, {}, want_V2); },
          py::arg("v"), py::arg("want_V2") = true);

    py::class_<LatitudeSolution>(m, "LatitudeSolution")
        .def_readonly("p", &LatitudeSolution::p)
        .def_readonly("q", &LatitudeSolution::q)
        .def_readonly("a0", &LatitudeSolution::a0)
        .def_readonly("nodes", &LatitudeSolution::nodes)
        .def_readonly("energy", &LatitudeSolution::energy)
        .def_readonly("residual_sup", &LatitudeSolution::residual_sup)
        .def_readonly("t", &LatitudeSolution::t)
        .def_readonly("u", &LatitudeSolution::u);
    m.def("find_solutions",
          [](int p, int q, int max_nodes) { return find_solutions(p, q, max_nodes); },
          py::arg("p"), py::arg("q"), py::arg("max_nodes"));
    m.def("pullback", [](const LatitudeSolution& s) { return Handle{pullback(s)}; });
    m.def("flat_residual",
          [](const Handle& h, int samples) { return flat_residual(h.ptr, samples); },
          py::arg("v"), py::arg("samples_per_axis") = 48);

    py::class_<WeylProductResult>(m, "WeylProductResult")
        .def_readonly("value", &WeylProductResult::value)
        .def_readonly("hessian_route", &WeylProductResult::hessian_route)
        .def_readonly("gradient_route", &WeylProductResult::gradient_route)
        .def_readonly("reduced_route", &WeylProductResult::reduced_route)
        .def_readonly("montecarlo", &WeylProductResult::montecarlo)
        .def_readonly("montecarlo_stderr", &WeylProductResult::montecarlo_stderr);
    m.def("weyl_otimes_b",
          [](const Handle& h, int p, int q, bool mc, std::uint64_t seed, std::size_t samples) {
              WeylProductOptions opt;
              opt.with_montecarlo = mc;
              opt.seed = seed;
              opt.mc_samples = samples;
              return weyl_otimes_b(h.ptr, p, q, opt);
          },
          py::arg("v"), py::arg("p"), py::arg("q"), py::arg("montecarlo") = false,
          py::arg("seed") = 922337, py::arg("samples") = 400000);

    py::class_<MassResult>(m, "MassResult")
        .def_readonly("h0", &MassResult::h0)
        .def_readonly("mass", &MassResult::mass)
        .def_readonly("mass_ode", &MassResult::mass_ode);
    m.def("s3_mass", [](double h0) { return s3_mass(h0); }, py::arg("h0"));
    m.def("mass_closed_form", &mass_closed_form, py::arg("h0"));

    py::class_<PohozaevReport>(m, "PohozaevReport")
        .def_readonly("boundary", &PohozaevReport::boundary)
        .def_readonly("volume_subcritical", &PohozaevReport::volume_subcritical)
        .def_readonly("volume_potential", &PohozaevReport::volume_potential)
        .def_readonly("defect", &PohozaevReport::defect);
    m.def("pohozaev_terms",
          [](const Handle& h, double pexp, double h0, double delta) {
              return pohozaev_terms(h.ptr, pexp, h0, delta);
          },
          py::arg("v"), py::arg("pexp"), py::arg("h0"), py::arg("delta"));

    py::class_<PointData>(m, "PointData")
        .def(py::init([](int n, double h, double sg, std::optional<double> weyl,
                         std::optional<double> mass) {
                 PointData pt;
                 pt.n = n;
                 pt.h_at_x0 = h;
                 pt.sg_at_x0 = sg;
                 pt.weyl_otimes_b = weyl;
                 pt.mass_at_x0 = mass;
                 return pt;
             }),
             py::arg("n"), py::arg("h"), py::arg("sg") = 0.0,
             py::arg("weyl_otimes_b") = std::nullopt, py::arg("mass") = std::nullopt);

    py::class_<ObstructionReport>(m, "ObstructionReport")
        .def_readonly("lambda_implied", &ObstructionReport::lambda_implied)
        .def_property_readonly("verdict",
                               [](const ObstructionReport& r) { return to_string(r.verdict); })
        .def("to_json", &ObstructionReport::to_json);
    m.def("implied_rate",
          [](const PointData& pt, const BubbleSummary& s, bool exactly_critical) {
              return implied_rate(pt, s, exactly_critical);
          },
          py::arg("point"), py::arg("bubble"), py::arg("exactly_critical") = false);
    m.def("certify_no_blowup",
          [](int n, double t, double delta) {
              return certify_no_blowup(n, t, std::vector<double>(n, 0.0), delta);
          },
          py::arg("n"), py::arg("t"), py::arg("delta") = 0.3);

    m.def("profile_to_json", [](const Handle& h) { return profile_to_json(h.ptr); });
    m.def("profile_from_json", [](const std::string& s) { return Handle{profile_from_json(s)}; });
}
