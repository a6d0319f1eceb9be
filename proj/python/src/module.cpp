#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <utility>

#include "qwalk/analysis.hpp"
#include "qwalk/analytic.hpp"
#include "qwalk/bessel.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/error.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/lattice.hpp"

namespace py = pybind11;
using namespace qwalk;

namespace {

template <class T>
py::array_t<T> to_array(std::span<const T> values) {
    py::array_t<T> out(static_cast<py::ssize_t>(values.size()));
    std::copy(values.begin(), values.end(), out.mutable_data());
    return out;
}

template <class T, class F>
py::array_t<T> column(const MomentSeries& series, F field) {
    py::array_t<T> out(static_cast<py::ssize_t>(series.records.size()));
    auto* dst = out.mutable_data();
    for (const auto& r : series.records) *dst++ = field(r);
    return out;
}

MomentSeries series_from_arrays(py::array_t<std::int64_t, py::array::forcecast> n,
                                py::array_t<double, py::array::forcecast> sigma) {
    if (n.ndim() != 1 || sigma.ndim() != 1 || n.size() != sigma.size()) {
        throw DomainError("n and sigma must be 1-d arrays of equal length");
    }
    MomentSeries s;
    const auto nn = n.unchecked<1>();
    const auto ss = sigma.unchecked<1>();
    for (py::ssize_t i = 0; i < n.size(); ++i) {
        s.records.push_back({nn(i), 0.0, ss(i) * ss(i), ss(i)});
    }
    return s;
}

std::vector<Amplitude> amplitudes(py::array_t<std::complex<double>, py::array::forcecast> a) {
    if (a.ndim() != 1) throw DomainError("amplitudes must be a 1-d array");
    const auto* p = a.data();
    return {p, p + a.size()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discrete-time quantum walk with a time-dependent coin";

    auto base = py::register_exception<Error>(m, "QwalkError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());
    py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());
    py::register_exception<InsufficientData>(m, "InsufficientData", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<NormalizationError>(m, "NormalizationError", base.ptr());
    py::register_exception<ScheduleExhausted>(m, "ScheduleExhausted", base.ptr());
    py::register_exception<CapacityError>(m, "CapacityError", base.ptr());

    py::class_<CoinSchedule>(m, "CoinSchedule")
        .def_static("constant", &CoinSchedule::constant, py::arg("theta"))
        .def_static("hadamard", &CoinSchedule::hadamard)
        .def_static("power_law", &CoinSchedule::power_law, py::arg("alpha"))
        .def_static("linear", &CoinSchedule::linear, py::arg("gamma"))
        .def_static("table", &CoinSchedule::table, py::arg("angles"))
        .def_static("table_from_csv", &CoinSchedule::table_from_csv, py::arg("path"))
        .def("theta_at", &CoinSchedule::theta_at, py::arg("n"))
        .def("cos_sin_at",
             [](const CoinSchedule& s, std::int64_t n) {
                 const auto t = s.cos_sin_at(n);
                 return std::make_pair(t.cos, t.sin);
             },
             py::arg("n"))
        .def_property_readonly("descriptor", &CoinSchedule::descriptor)
        .def("__repr__", [](const CoinSchedule& s) { return "CoinSchedule." + s.descriptor(); });

    py::class_<WalkerState>(m, "WalkerState")
        .def_static("localized", &WalkerState::localized, py::arg("site") = 0,
                    py::arg("upper") = Amplitude(0.70710678118654752, 0.0),
                    py::arg("lower") = Amplitude(0.0, 0.70710678118654752))
        .def_static("from_amplitudes",
                    [](Site k_min, py::array_t<std::complex<double>, py::array::forcecast> upper,
                       py::array_t<std::complex<double>, py::array::forcecast> lower,
                       std::int64_t step, double tolerance) {
                        return WalkerState::from_amplitudes(k_min, amplitudes(upper),
                                                            amplitudes(lower), step, tolerance);
                    },
                    py::arg("k_min"), py::arg("upper"), py::arg("lower"), py::arg("step") = 1,
                    py::arg("tolerance") = 1e-12)
        .def_property_readonly("step", &WalkerState::step)
        .def_property_readonly("k_min", &WalkerState::k_min)
        .def_property_readonly("k_max", &WalkerState::k_max)
        .def_property_readonly("upper", [](const WalkerState& s) { return to_array(s.upper()); })
        .def_property_readonly("lower", [](const WalkerState& s) { return to_array(s.lower()); })
        .def("norm", &WalkerState::norm)
        .def("__len__", &WalkerState::size);

    py::class_<Distribution>(m, "Distribution")
        .def_readonly("k_min", &Distribution::k_min)
        .def_readonly("step", &Distribution::step)
        .def_property_readonly("k_max", &Distribution::k_max)
        .def_property_readonly("k",
                               [](const Distribution& d) {
                                   py::array_t<Site> k(static_cast<py::ssize_t>(d.probs.size()));
                                   auto* p = k.mutable_data();
                                   for (Site i = d.k_min; i <= d.k_max(); ++i) *p++ = i;
                                   return k;
                               })
        .def_property_readonly("p",
                               [](const Distribution& d) {
                                   return to_array(std::span<const double>(d.probs));
                               })
        .def("total", &Distribution::total)
        .def("support_edge", &Distribution::support_edge, py::arg("threshold") = 1e-6);

    py::class_<MomentRecord>(m, "MomentRecord")
        .def_readonly("step", &MomentRecord::step)
        .def_readonly("m1", &MomentRecord::m1)
        .def_readonly("m2", &MomentRecord::m2)
        .def_readonly("sigma", &MomentRecord::sigma)
        .def("__repr__", [](const MomentRecord& r) {
            return "MomentRecord(step=" + std::to_string(r.step) +
                   ", m1=" + py::repr(py::float_(r.m1)).cast<std::string>() +
                   ", m2=" + py::repr(py::float_(r.m2)).cast<std::string>() +
                   ", sigma=" + py::repr(py::float_(r.sigma)).cast<std::string>() + ")";
        });

    py::class_<MomentSeries>(m, "MomentSeries")
        .def_static("from_arrays", &series_from_arrays, py::arg("n"), py::arg("sigma"))
        .def_readonly("schedule", &MomentSeries::schedule)
        .def_property_readonly("n", [](const MomentSeries& s) {
            return column<std::int64_t>(s, [](const MomentRecord& r) { return r.step; });
        })
        .def_property_readonly("m1", [](const MomentSeries& s) {
            return column<double>(s, [](const MomentRecord& r) { return r.m1; });
        })
        .def_property_readonly("m2", [](const MomentSeries& s) {
            return column<double>(s, [](const MomentRecord& r) { return r.m2; });
        })
        .def_property_readonly("sigma", [](const MomentSeries& s) {
            return column<double>(s, [](const MomentRecord& r) { return r.sigma; });
        })
        .def("__len__", [](const MomentSeries& s) { return s.records.size(); });

    m.def("probability", &probability, py::arg("state"));
    m.def("moments", &moments, py::arg("distribution"));
    m.def("step", &qwalk::step, py::arg("state"), py::arg("schedule"));
    m.def(
        "evolve",
        [](const WalkerState& initial, const CoinSchedule& schedule, std::int64_t n_max,
           std::int64_t record_every, std::size_t max_sites) {
            EvolveOptions opts;
            opts.record_every = record_every;
            opts.max_sites = max_sites;
            py::gil_scoped_release release;
            auto r = evolve(initial, schedule, n_max, opts);
            return std::make_pair(std::move(r.series), std::move(r.final_state));
        },
        py::arg("initial"), py::arg("schedule"), py::arg("n_max"), py::arg("record_every") = 10,
        py::arg("max_sites") = 2'000'000,
        "Runs to step n_max; returns (MomentSeries, final WalkerState).");
    m.def(
        "snapshot",
        [](const WalkerState& initial, const CoinSchedule& schedule, std::int64_t n) {
            py::gil_scoped_release release;
            return snapshot_distribution(initial, schedule, n);
        },
        py::arg("initial"), py::arg("schedule"), py::arg("n"));

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("exponent", &FitResult::exponent)
        .def_readonly("prefactor", &FitResult::prefactor)
        .def_readonly("r_squared", &FitResult::r_squared)
        .def_readonly("n_lo", &FitResult::n_lo)
        .def_readonly("n_hi", &FitResult::n_hi)
        .def_readonly("points", &FitResult::points);
    m.def("fit_power_law", &fit_power_law, py::arg("series"), py::arg("n_lo"), py::arg("n_hi"));
    m.def("fit_logarithmic", &fit_logarithmic, py::arg("series"), py::arg("n_lo"), py::arg("n_hi"));

    py::class_<LocalizationVerdict>(m, "LocalizationVerdict")
        .def_readonly("is_localized", &LocalizationVerdict::is_localized)
        .def_readonly("sigma_mean", &LocalizationVerdict::sigma_mean)
        .def_readonly("sigma_range", &LocalizationVerdict::sigma_range)
        .def_readonly("relative_range", &LocalizationVerdict::relative_range)
        .def_readonly("rank_correlation", &LocalizationVerdict::rank_correlation)
        .def_readonly("drift_exponent", &LocalizationVerdict::drift_exponent);
    m.def(
        "detect_localization",
        [](const MomentSeries& s, std::int64_t n_lo) { return detect_localization(s, n_lo); },
        py::arg("series"), py::arg("n_lo"));
    m.def("smooth", &smooth, py::arg("series"), py::arg("window"));

    m.def("effective_time", &qwalk::effective_time, py::arg("alpha"), py::arg("n0"), py::arg("n"));
    py::class_<SigmaCoefficients>(m, "SigmaCoefficients")
        .def_readonly("a", &SigmaCoefficients::a)
        .def_readonly("b", &SigmaCoefficients::b)
        .def_readonly("c", &SigmaCoefficients::c)
        .def("sigma", &SigmaCoefficients::sigma, py::arg("t_star"));
    py::class_<AnalyticModel>(m, "AnalyticModel")
        .def(py::init<WalkerState, double>(), py::arg("seed"), py::arg("alpha"))
        .def_property_readonly("n0", &AnalyticModel::n0)
        .def_property_readonly("alpha", &AnalyticModel::alpha)
        .def_property_readonly("m1_0", &AnalyticModel::m1_0)
        .def_property_readonly("m2_0", &AnalyticModel::m2_0)
        .def("effective_time", &AnalyticModel::effective_time, py::arg("n"));
    m.def("analytic_amplitudes", &analytic_amplitudes, py::arg("model"), py::arg("t_star"));
    m.def("closed_form_moments", &closed_form_moments, py::arg("model"), py::arg("t_star"));
    m.def("sigma_coefficients", &sigma_coefficients, py::arg("model"));
    m.def(
        "predict_regime",
        [](double alpha) {
            const auto p = predict_regime(alpha);
            return py::make_tuple(std::string(to_string(p.regime)), std::string(to_string(p.law)),
                                  p.exponent);
        },
        py::arg("alpha"), "Returns (regime, growth law, exponent).");

    m.def("bessel_j", &bessel::j, py::arg("order"), py::arg("x"));
    m.def("bessel_product_sum", &bessel::product_sum, py::arg("power"), py::arg("nu"), py::arg("t"));
    m.def("bessel_product_sum_closed_form", &bessel::product_sum_closed_form, py::arg("power"),
          py::arg("nu"), py::arg("t"));

    py::class_<RunReport>(m, "RunReport")
        .def_readonly("passed", &RunReport::passed)
        .def_readonly("lines", &RunReport::lines)
        .def_readonly("files", &RunReport::files);
    m.def(
        "run_config",
        [](const std::string& text, const std::string& out) {
            auto cfg = parse_config(text);
            if (!out.empty()) cfg.out = out;
            py::gil_scoped_release release;
            return run(cfg);
        },
        py::arg("config_json"), py::arg("out") = "",
        "Runs the experiment described by a JSON config document.");
    m.def(
        "default_config", [] { return serialize_config(ExperimentConfig{}); },
        "JSON document with every config field at its default.");
}
