#include "hnm/amplitude.hpp"
#include "hnm/channel.hpp"
#include "hnm/combinatorics.hpp"
#include "hnm/coupling.hpp"
#include "hnm/error.hpp"
#include "hnm/markovianity.hpp"
#include "hnm/modes.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hnm;

namespace {

py::array_t<double> times(const AmplitudeTrace& trace)
{
    py::array_t<double> t(static_cast<py::ssize_t>(trace.size()));
    auto view = t.mutable_unchecked<1>();
    for (std::size_t k = 0; k < trace.size(); ++k) view(k) = trace.grid().time(k);
    return t;
}

AmplitudeTrace compute(const ModelParams& model, double dt, double t_max, const std::string& backend,
                       int modes_K)
{
    const TimeGrid grid = TimeGrid::covering(dt, t_max);
    switch (backend_from_string(backend)) {
    case Backend::Series: return amplitude_series(model, grid);
    case Backend::Volterra: return amplitude_volterra(model, grid);
    case Backend::Laplace: return amplitude_laplace(model, grid).trace;
    case Backend::Modes: return amplitude_modes(build_discrete_modes(model, modes_K), grid).trace;
    }
    throw Error(ErrorKind::BadParameter, "unknown backend");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Survival amplitude backends, qubit channel and semigroup-defect witness";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&]() { return py::exception<Error>(m, "HnmError", PyExc_RuntimeError); });
    // args of the raised exception: (kind, message)
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const py::object& type = error_type.get_stored();
            const py::object instance = type(std::string(to_string(e.kind())), e.what());
            PyErr_SetObject(type.ptr(), instance.ptr());
        }
    });

    py::class_<CouplingSpec>(m, "Coupling")
        .def_static("flat", &CouplingSpec::flat, py::arg("gamma0"), py::arg("period_T") = 0.0)
        .def_static("sinusoidal", &CouplingSpec::sinusoidal, py::arg("gamma0"),
                    py::arg("period_T"), py::arg("alpha"))
        .def_static("exp_comb", &CouplingSpec::exp_comb, py::arg("gamma0"), py::arg("period_T"),
                    py::arg("beta"))
        .def_static("custom", &CouplingSpec::custom, py::arg("gamma0"), py::arg("period_T"),
                    py::arg("coeffs"))
        .def_readonly("gamma0", &CouplingSpec::gamma0)
        .def_readonly("period_T", &CouplingSpec::period_T)
        .def_readonly("alpha", &CouplingSpec::alpha)
        .def_readonly("beta", &CouplingSpec::beta)
        .def_readonly("coeffs", &CouplingSpec::coeffs);

    py::class_<ModelParams>(m, "Model")
        .def(py::init([](const CouplingSpec& spec, double eps0) {
                 return ModelParams{validate_coupling(spec), eps0};
             }),
             py::arg("coupling"), py::arg("eps0") = 0.0)
        .def_readonly("eps0", &ModelParams::eps0)
        .def_property_readonly("gamma0", [](const ModelParams& p) { return p.coupling.gamma0(); })
        .def_property_readonly("period_T", [](const ModelParams& p) { return p.coupling.period(); });

    py::class_<AmplitudeTrace>(m, "Trace")
        .def_property_readonly("t", &times)
        .def_property_readonly("a",
                               [](const AmplitudeTrace& tr) {
                                   return py::array_t<complex>(
                                       static_cast<py::ssize_t>(tr.size()), tr.values().data());
                               })
        .def_property_readonly("dt", [](const AmplitudeTrace& tr) { return tr.grid().dt(); })
        .def_property_readonly("backend",
                               [](const AmplitudeTrace& tr) { return std::string(to_string(tr.backend())); })
        .def("__len__", &AmplitudeTrace::size);

    m.def("amplitude", &compute, py::arg("model"), py::arg("dt"), py::arg("t_max"),
          py::arg("backend") = "series", py::arg("modes_K") = 2000,
          py::call_guard<py::gil_scoped_release>(),
          "Survival amplitude on the grid k dt <= t_max");

    m.def("spectral_density",
          [](const ModelParams& p, double omega) { return spectral_density(p.coupling, omega); });
    m.def("self_energy", [](const ModelParams& p, complex z) { return self_energy(p.coupling, z); });
    m.def("phi", py::overload_cast<const ModelParams&, int, double>(&phi), py::arg("model"),
          py::arg("n"), py::arg("x"));

    m.def(
        "evolve",
        [](const Eigen::Matrix2cd& rho0, complex a) {
            return evolve(DensityMatrix::make(rho0(0, 0), rho0(0, 1), rho0(1, 0), rho0(1, 1)), a)
                .matrix();
        },
        py::arg("rho0"), py::arg("a"));
    m.def("gkls_generator", &gkls_generator, py::arg("gamma"), py::arg("eps"));
    m.def("channel_superoperator", &channel_superoperator, py::arg("a"));
    m.def("choi_matrix", &choi_matrix, py::arg("a"));
    m.def("extract_rates", [](const AmplitudeTrace& tr) {
        const RateFunctions r = extract_rates(tr);
        return py::make_tuple(py::array_t<double>(static_cast<py::ssize_t>(r.gamma.size()), r.gamma.data()),
                              py::array_t<double>(static_cast<py::ssize_t>(r.eps.size()), r.eps.data()));
    });

    m.def("semigroup_defect", &semigroup_defect, py::arg("trace"), py::arg("t_index"),
          py::arg("s_index"));
    m.def("hidden_horizon", &hidden_horizon, py::arg("trace"), py::arg("tol") = kSeriesDefectTolerance);
    m.def(
        "bound_state_check",
        [](const ModelParams& p, const AmplitudeTrace& tr, double threshold) {
            const BoundStateReport r = bound_state_check(p, tr, threshold);
            py::dict d;
            d["predicted"] = r.predicted;
            d["tail_min_abs2"] = r.tail_min_abs2;
            d["tail_max_abs2"] = r.tail_max_abs2;
            d["consistent"] = r.consistent;
            return d;
        },
        py::arg("model"), py::arg("trace"), py::arg("threshold") = kDefaultBoundStateThreshold);
}
