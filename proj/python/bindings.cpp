#include "tcdkit/bounds.hpp"
#include "tcdkit/change_model.hpp"
#include "tcdkit/detectors.hpp"
#include "tcdkit/montecarlo.hpp"
#include "tcdkit/sam_dist.hpp"
#include "tcdkit/sigraim.hpp"
#include "tcdkit/stats.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace tcd;

namespace {

TcdConfig make_config(int m, int m_alpha, double alpha_tilde, double beta_tilde) {
    return TcdConfig::from_windows(m, m_alpha, Probability(alpha_tilde), Probability(beta_tilde));
}

py::dict estimate_to_dict(const mc::SimEstimate& e) {
    py::dict d;
    d["p_hat"] = e.p_hat;
    d["stderr"] = e.stderr_;
    d["runs"] = e.runs;
    d["seed"] = e.seed;
    return d;
}

mc::SimScenario make_scenario(const ChangeModel& model, const std::string& kind, double h, int m,
                              int m_alpha, std::int64_t runs, std::uint64_t seed, int threads,
                              const std::vector<std::int64_t>& v_sweep) {
    mc::SimScenario s(model);
    s.kind = detector_kind_from_string(kind);
    s.h = h;
    s.m = m;
    s.m_alpha = m_alpha;
    s.runs = runs;
    s.seed = seed;
    s.threads = threads;
    s.v_sweep = v_sweep;
    return s;
}

} // namespace

PYBIND11_MODULE(_tcdkit, mod) {
    mod.doc() = "Finite moving average transient change detection: analytic bounds, competitor "
                "stopping rules, Monte-Carlo validation and sig-RAIM availability.";

    // special functions
    mod.def("norm_cdf", [](double x) { return stats::norm_cdf(x).value(); }, py::arg("x"));
    mod.def("norm_quantile", &stats::norm_quantile, py::arg("p"));
    mod.def("chi2_cdf", [](double x, int k) { return stats::chi2_cdf(x, DegreesOfFreedom(k)).value(); },
            py::arg("x"), py::arg("k"));
    mod.def("chi2_quantile", [](double p, int k) { return stats::chi2_quantile(p, DegreesOfFreedom(k)); },
            py::arg("p"), py::arg("k"));
    mod.def("hermite_poly", &stats::hermite_poly, py::arg("k"), py::arg("z"));
    mod.def("gaussian_raw_moment", &stats::gaussian_raw_moment, py::arg("mu"), py::arg("sigma2"),
            py::arg("k"));

    // change models
    py::class_<ChangeModel>(mod, "ChangeModel")
        .def("llr", [](const ChangeModel& m, double x) { return llr(m, x); }, py::arg("x"))
        .def("llr_coeffs",
             [](const ChangeModel& m) {
                 const auto c = llr_coeffs(m);
                 return py::make_tuple(c.a, c.b, c.c);
             })
        .def_property_readonly("pre",
                               [](const ChangeModel& m) {
                                   return py::make_tuple(m.pre().mu, m.pre().sigma2);
                               })
        .def_property_readonly("tuned",
                               [](const ChangeModel& m) {
                                   return py::make_tuple(m.tuned().mu, m.tuned().sigma2);
                               })
        .def_property_readonly("actual", [](const ChangeModel& m) {
            return py::make_tuple(m.actual().mu, m.actual().sigma2);
        });

    mod.def(
        "mean_change",
        [](double mu0, double sigma2, double mu1_tuned, std::optional<double> mu1_actual) {
            return ChangeModel(MeanChange{mu0, sigma2, mu1_tuned, mu1_actual.value_or(mu1_tuned)});
        },
        py::arg("mu0"), py::arg("sigma2"), py::arg("mu1_tuned"), py::arg("mu1_actual") = std::nullopt);
    mod.def(
        "variance_change",
        [](double sigma2_0, double sigma2_1_tuned, std::optional<double> sigma2_1_actual) {
            return ChangeModel(
                VarianceChange{sigma2_0, sigma2_1_tuned, sigma2_1_actual.value_or(sigma2_1_tuned)});
        },
        py::arg("sigma2_0"), py::arg("sigma2_1_tuned"), py::arg("sigma2_1_actual") = std::nullopt);
    mod.def(
        "general_change",
        [](double mu0, double sigma2_0, double mu1_tuned, double sigma2_1_tuned,
           std::optional<double> mu1_actual, std::optional<double> sigma2_1_actual) {
            return ChangeModel(GeneralChange{{mu0, sigma2_0},
                                             {mu1_tuned, sigma2_1_tuned},
                                             {mu1_actual.value_or(mu1_tuned),
                                              sigma2_1_actual.value_or(sigma2_1_tuned)}});
        },
        py::arg("mu0"), py::arg("sigma2_0"), py::arg("mu1_tuned"), py::arg("sigma2_1_tuned"),
        py::arg("mu1_actual") = std::nullopt, py::arg("sigma2_1_actual") = std::nullopt);

    // detectors
    py::class_<Detector>(mod, "Detector")
        .def(py::init([](const std::string& kind, int m, double h) {
                 return Detector(detector_kind_from_string(kind), m, h);
             }),
             py::arg("kind"), py::arg("m"), py::arg("h"))
        .def("step",
             [](Detector& d, double llr_value) -> std::optional<py::tuple> {
                 if (const auto a = d.step(llr_value)) {
                     return py::make_tuple(a->stop_index, a->statistic);
                 }
                 return std::nullopt;
             },
             py::arg("llr_value"))
        .def_property_readonly("stopped", &Detector::stopped)
        .def_property_readonly("samples_seen", &Detector::samples_seen);

    mod.def(
        "run_detector",
        [](const std::string& kind, int m, double h,
           const std::vector<double>& llr_stream) -> std::optional<py::tuple> {
            if (const auto a = run(detector_kind_from_string(kind), m, h, llr_stream)) {
                return py::make_tuple(a->stop_index, a->statistic);
            }
            return std::nullopt;
        },
        py::arg("kind"), py::arg("m"), py::arg("h"), py::arg("llr_stream"));

    // analytic bounds
    mod.def("cusum_threshold",
            [](double alpha, int m_alpha) { return cusum_threshold(Probability(alpha), m_alpha); },
            py::arg("alpha_tilde"), py::arg("m_alpha"));
    mod.def(
        "detector_threshold",
        [](const ChangeModel& model, const std::string& kind, int m, int m_alpha, double alpha,
           const std::string& rule) {
            return detector_threshold(model, detector_kind_from_string(kind),
                                      make_config(m, m_alpha, alpha, 0.01),
                                      threshold_rule_from_string(rule));
        },
        py::arg("model"), py::arg("kind"), py::arg("m"), py::arg("m_alpha"), py::arg("alpha_tilde"),
        py::arg("rule") = "corollary");
    mod.def("pmd_bound",
            [](const ChangeModel& model, double h, int m) { return pmd_bound(model, h, m).value(); },
            py::arg("model"), py::arg("h"), py::arg("m"));
    mod.def("pfa_bound",
            [](const ChangeModel& model, double h, int m, int m_alpha) {
                return pfa_bound(model, h, m, m_alpha).value();
            },
            py::arg("model"), py::arg("h"), py::arg("m"), py::arg("m_alpha"));

    // Monte Carlo
    mod.def(
        "simulate_pfa",
        [](const ChangeModel& model, const std::string& kind, double h, int m, int m_alpha,
           std::int64_t runs, std::uint64_t seed, int threads) {
            return estimate_to_dict(mc::simulate_pfa(make_scenario(model, kind, h, m, m_alpha, runs, seed,
                                                                   threads, {})));
        },
        py::arg("model"), py::arg("kind"), py::arg("h"), py::arg("m"), py::arg("m_alpha"),
        py::arg("runs") = 10000, py::arg("seed") = 1, py::arg("threads") = 0);
    mod.def(
        "simulate_pmd",
        [](const ChangeModel& model, const std::string& kind, double h, int m, int m_alpha,
           std::int64_t runs, std::uint64_t seed, int threads, const std::vector<std::int64_t>& v_sweep) {
            return estimate_to_dict(mc::simulate_pmd(make_scenario(model, kind, h, m, m_alpha, runs, seed,
                                                                   threads, v_sweep)));
        },
        py::arg("model"), py::arg("kind"), py::arg("h"), py::arg("m"), py::arg("m_alpha"),
        py::arg("runs") = 10000, py::arg("seed") = 1, py::arg("threads") = 0,
        py::arg("v_sweep") = std::vector<std::int64_t>{});

    // availability
    mod.def(
        "availability",
        [](const ChangeModel& model, const std::string& kind, int m, int m_alpha, double alpha_tilde,
           double beta_tilde, const std::string& rule, const std::string& metric) {
            const auto rep = availability(model, make_config(m, m_alpha, alpha_tilde, beta_tilde),
                                          detector_kind_from_string(kind),
                                          threshold_rule_from_string(rule), metric);
            py::dict d;
            d["metric"] = rep.metric;
            d["method"] = to_string(rep.method);
            d["h"] = rep.h;
            d["beta_bound"] = rep.beta_bound.value();
            d["available"] = rep.available;
            return d;
        },
        py::arg("model"), py::arg("kind"), py::arg("m"), py::arg("m_alpha"), py::arg("alpha_tilde"),
        py::arg("beta_tilde"), py::arg("rule") = "corollary", py::arg("metric") = "");
}
