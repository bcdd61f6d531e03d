// Python bindings for the estimation pipeline: sources, the channel model,
// observed statistics, every bound and the key-rate helpers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mdiqkd/bounds_analytic.hpp"
#include "mdiqkd/bounds_exact.hpp"
#include "mdiqkd/channel.hpp"
#include "mdiqkd/keyrate.hpp"
#include "mdiqkd/oracle.hpp"
#include "mdiqkd/sources.hpp"
#include "mdiqkd/statistics.hpp"

namespace py = pybind11;
using namespace mdiqkd;

namespace {

py::dict bound_dict(const AnalyticBound& b) {
    py::dict d;
    d["method"] = to_string(b.method);
    d["value"] = b.value;
    d["raw"] = b.raw;
    d["clamped"] = b.clamped;
    return d;
}

py::dict point_dict(const PointEstimates& p) {
    py::dict s11, e11;
    for (BoundMethod m : kYieldMethods) {
        s11[to_string(m)] = bound_dict(p.s11(m));
        e11[to_string(m)] = bound_dict(p.e11(m));
    }
    py::dict d;
    d["loss_db"] = p.loss_db;
    d["s11"] = s11;
    d["e11"] = e11;
    d["s11_true"] = p.s11_true;
    d["e11_true"] = p.e11_true;
    d["s_yy_z"] = p.s_yy_z;
    d["e_yy_z"] = p.e_yy_z;
    return d;
}

}  // namespace

PYBIND11_MODULE(mdiqkd, m) {
    m.doc() = "Three-intensity decoy-state bounds and key rates for MDI-QKD";

    py::register_exception<Error>(m, "MdiqkdError");

    py::class_<PhotonNumberDistribution>(m, "PhotonNumberDistribution")
        .def_static("poisson", &PhotonNumberDistribution::poisson, py::arg("mu"),
                    py::arg("k_max") = 40)
        .def_static("custom", &PhotonNumberDistribution::custom, py::arg("probs"),
                    py::arg("mean_hint") = py::none())
        .def_static("vacuum", &PhotonNumberDistribution::vacuum, py::arg("k_max") = 0)
        .def_property_readonly("probs", &PhotonNumberDistribution::probs)
        .def_property_readonly("tail_mass", &PhotonNumberDistribution::tail_mass)
        .def_property_readonly("mean", &PhotonNumberDistribution::mean)
        .def_property_readonly("k_max", &PhotonNumberDistribution::k_max)
        .def("prob", &PhotonNumberDistribution::prob, py::arg("k"));

    m.def("check_condition", &check_condition, py::arg("x"), py::arg("y"));

    py::class_<ThreeIntensitySource>(m, "ThreeIntensitySource")
        .def_static("poisson", &ThreeIntensitySource::poisson, py::arg("mu_decoy"),
                    py::arg("mu_signal"), py::arg("k_max") = 40, py::arg("label") = "")
        .def_static("make", &ThreeIntensitySource::make, py::arg("decoy"), py::arg("signal"),
                    py::arg("label") = "")
        .def_readonly("decoy_x", &ThreeIntensitySource::decoy_x)
        .def_readonly("signal_y", &ThreeIntensitySource::signal_y)
        .def_readonly("label", &ThreeIntensitySource::label);

    py::enum_<Basis>(m, "Basis").value("Z", Basis::Z).value("X", Basis::X);

    py::class_<ChannelParams>(m, "ChannelParams")
        .def(py::init([](double loss, double eff, double dark, double mis, double bg) {
                 ChannelParams p;
                 p.total_loss_db = loss;
                 p.detector_efficiency = eff;
                 p.dark_count = dark;
                 p.misalignment = mis;
                 p.background_error = bg;
                 p.validate();
                 return p;
             }),
             py::arg("total_loss_db") = 20.0, py::arg("detector_efficiency") = 1.0,
             py::arg("dark_count") = 3.0e-6, py::arg("misalignment") = 0.015,
             py::arg("background_error") = 0.5)
        .def_readwrite("total_loss_db", &ChannelParams::total_loss_db)
        .def_readwrite("detector_efficiency", &ChannelParams::detector_efficiency)
        .def_readwrite("dark_count", &ChannelParams::dark_count)
        .def_readwrite("misalignment", &ChannelParams::misalignment)
        .def_readwrite("background_error", &ChannelParams::background_error)
        .def_property_readonly("side_transmittance", &ChannelParams::side_transmittance);

    py::class_<YieldMatrix>(m, "YieldMatrix")
        .def_property_readonly("k_max", &YieldMatrix::k_max)
        .def("yield_at", &YieldMatrix::yield, py::arg("m"), py::arg("n"))
        .def("error_yield_at", &YieldMatrix::error_yield, py::arg("m"), py::arg("n"));

    m.def("simulate_yield_matrix", &simulate_yield_matrix, py::arg("params"),
          py::arg("k_max") = 40);
    m.def("asymptotic_reference", &asymptotic_reference, py::arg("yield_matrix"));

    py::class_<ObservedStatistics>(m, "ObservedStatistics")
        .def_property_readonly("S",
                               [](const ObservedStatistics& o) {
                                   return std::vector<std::vector<double>>{
                                       {o.S[0].begin(), o.S[0].end()},
                                       {o.S[1].begin(), o.S[1].end()},
                                       {o.S[2].begin(), o.S[2].end()}};
                               })
        .def_property_readonly("T", [](const ObservedStatistics& o) {
            return std::vector<std::vector<double>>{{o.T[0].begin(), o.T[0].end()},
                                                    {o.T[1].begin(), o.T[1].end()},
                                                    {o.T[2].begin(), o.T[2].end()}};
        });

    m.def("compose_observed", &compose_observed, py::arg("alice"), py::arg("bob"),
          py::arg("yield_matrix"));

    py::class_<ReducedGains>(m, "ReducedGains")
        .def_readonly("s_xx", &ReducedGains::s_xx)
        .def_readonly("s_xy", &ReducedGains::s_xy)
        .def_readonly("s_yx", &ReducedGains::s_yx)
        .def_readonly("s_yy", &ReducedGains::s_yy)
        .def_readonly("t_xx", &ReducedGains::t_xx)
        .def_readonly("t_xy", &ReducedGains::t_xy)
        .def_readonly("t_yx", &ReducedGains::t_yx)
        .def_readonly("t_yy", &ReducedGains::t_yy);

    m.def("reduce", &reduce, py::arg("obs"), py::arg("alice"), py::arg("bob"));

    m.def("s11_123", [](const ReducedGains& rg, const ThreeIntensitySource& a,
                        const ThreeIntensitySource& b) { return bound_dict(s11_123(rg, a, b)); });
    m.def("s11_124", [](const ReducedGains& rg, const ThreeIntensitySource& a,
                        const ThreeIntensitySource& b) { return bound_dict(s11_124(rg, a, b)); });
    m.def("s11_134", [](const ReducedGains& rg, const ThreeIntensitySource& a,
                        const ThreeIntensitySource& b) { return bound_dict(s11_134(rg, a, b)); });
    m.def("s11_234", [](const ReducedGains& rg, const ThreeIntensitySource& a,
                        const ThreeIntensitySource& b) { return bound_dict(s11_234(rg, a, b)); });
    m.def("s11_14", [](const ReducedGains& rg, const ThreeIntensitySource& a,
                       const ThreeIntensitySource& b) { return bound_dict(s11_14(rg, a, b)); });
    m.def("s11_alpha",
          [](const ReducedGains& rg, const ThreeIntensitySource& a,
             const ThreeIntensitySource& b) { return bound_dict(s11_alpha(rg, a, b)); });
    m.def("e11_simple",
          [](const ReducedGains& rg, const ThreeIntensitySource& a, const ThreeIntensitySource& b,
             double s11_bound) { return bound_dict(e11_simple(rg, a, b, s11_bound)); });

    m.def("s11_exact_min",
          [](const ReducedGains& rg, const ThreeIntensitySource& a,
             const ThreeIntensitySource& b) {
              const auto res = s11_exact_min(cop_coefficients(rg, a, b));
              return bound_dict(res.bound);
          });
    m.def("t11_exact_max", [](const ReducedGains& rg, const ThreeIntensitySource& a,
                              const ThreeIntensitySource& b) {
        const auto res = t11_exact_max(cop_coefficients(rg, a, b));
        return bound_dict(res.bound);
    });
    m.def("e11_exact",
          [](double s11_min, double t11_max) { return bound_dict(e11_exact(s11_min, t11_max)); });

    m.def("binary_entropy", &binary_entropy, py::arg("e"));
    m.def(
        "key_rate",
        [](double a1p_b1p, double s11_z, double e11_x, double s_yy_z, double e_yy_z,
           double f_ec) {
            return key_rate({a1p_b1p, s11_z, e11_x, s_yy_z, e_yy_z, f_ec});
        },
        py::arg("a1p_b1p"), py::arg("s11_z"), py::arg("e11_x"), py::arg("s_yy_z"),
        py::arg("e_yy_z"), py::arg("f_ec") = 1.16);

    m.def(
        "estimate_point",
        [](double loss_db, double mu1, double mu2, double dark_count, double misalignment,
           double f_ec, int k_max) {
            ChannelParams params;
            params.total_loss_db = loss_db;
            params.dark_count = dark_count;
            params.misalignment = misalignment;
            const auto alice = ThreeIntensitySource::poisson(mu1, mu2, k_max, "Alice");
            const auto bob = ThreeIntensitySource::poisson(mu1, mu2, k_max, "Bob");
            params.basis = Basis::Z;
            const auto ym_z = simulate_yield_matrix(params, k_max);
            params.basis = Basis::X;
            const auto ym_x = simulate_yield_matrix(params, k_max);
            PointEstimates p = estimate_point(compose_observed(alice, bob, ym_z),
                                              compose_observed(alice, bob, ym_x), alice, bob);
            p.loss_db = loss_db;
            const auto [s11_true, e11_true] = asymptotic_reference(ym_z);
            p.s11_true = s11_true;
            p.e11_true = e11_true;
            py::dict d = point_dict(p);
            py::dict rates;
            for (BoundMethod mm : kYieldMethods) {
                rates[to_string(mm)] = rate_for(p, mm, f_ec);
            }
            d["rate"] = rates;
            d["rate_asymptotic"] = rate_asymptotic(p, f_ec);
            return d;
        },
        "Full simulated pipeline at one loss point; returns every bound and rate",
        py::arg("loss_db"), py::arg("mu1") = 0.1, py::arg("mu2") = 0.5,
        py::arg("dark_count") = 3.0e-6, py::arg("misalignment") = 0.015, py::arg("f_ec") = 1.16,
        py::arg("k_max") = 40);
}
