#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "msgf/checks.hpp"
#include "msgf/oracle.hpp"
#include "msgf/proptime.hpp"
#include "msgf/specfun.hpp"

namespace py = pybind11;
using namespace msgf;

namespace {

using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

Extension extension_of(const std::string& s) {
    if (s == "-pi/2") return Extension::MinusHalfPi;
    if (s == "+pi/2" || s == "pi/2") return Extension::PlusHalfPi;
    fail(ErrorKind::Validation, "extension must be '-pi/2' or '+pi/2'");
}

SpacetimePoint point_of(const std::vector<double>& v) {
    if (v.size() != 3 && v.size() != 4) fail(ErrorKind::Validation, "points are [x0, r, phi] or [x0, r, phi, x3]");
    return {v[0], v[1], v[2], v.size() == 4 ? v[3] : 0.0};
}

PropagatorKind propagator_kind_of(const std::string& s) {
    if (s == "causal") return PropagatorKind::Causal;
    if (s == "anticausal") return PropagatorKind::Anticausal;
    if (s == "commutation") return PropagatorKind::Commutation;
    if (s == "retarded") return PropagatorKind::Retarded;
    if (s == "advanced") return PropagatorKind::Advanced;
    fail(ErrorKind::Validation, "unknown propagator kind '" + s + "'");
}

NonrelKind nonrel_kind_of(const std::string& species, const std::string& spin) {
    NonrelKind k;
    if (species == "antiparticle") k.species = Species::Antiparticle;
    else if (species != "particle") fail(ErrorKind::Validation, "species is 'particle' or 'antiparticle'");
    if (spin == "down") k.spin = Spin::Down;
    else if (spin != "up") fail(ErrorKind::Validation, "spin is 'up' or 'down'");
    return k;
}

py::dict result_dict(const checks::CheckResult& r) {
    py::dict d;
    d["check"] = r.check;
    d["parameters"] = r.parameters.dump();
    d["residual"] = r.residual;
    d["tolerance"] = r.tolerance;
    d["lower_bound"] = r.lower_bound;
    d["pass"] = r.pass;
    return d;
}

}  // namespace

PYBIND11_MODULE(_msgf, m) {
    m.doc() = "Green functions of the Dirac equation in the magnetic-solenoid field";

    static py::exception<Error> base(m, "MsgfError");
    static py::exception<Error> validation(m, "ValidationError", base.ptr());
    static py::exception<Error> numerical(m, "NumericalError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Validation) py::set_error(validation, e.what());
            else py::set_error(numerical, e.what());
        }
    });

    py::class_<FieldConfiguration>(m, "Field")
        .def(py::init([](double eB, int l0, double mu, double M, const std::string& dim) {
                 if (dim != "2+1" && dim != "3+1") fail(ErrorKind::Validation, "dim is '2+1' or '3+1'");
                 return FieldConfiguration::make(eB, l0, mu, M, dim == "2+1" ? Dimension::D2plus1 : Dimension::D3plus1);
             }),
             py::arg("eB") = 1.0, py::arg("l0") = 0, py::arg("mu") = 0.0, py::arg("M") = 1.0, py::arg("dim") = "2+1")
        .def_readonly("eB", &FieldConfiguration::eB)
        .def_readonly("l0", &FieldConfiguration::l0)
        .def_readonly("mu", &FieldConfiguration::mu)
        .def_readonly("M", &FieldConfiguration::M)
        .def_property_readonly("dim", [](const FieldConfiguration& c) { return c.dim == Dimension::D2plus1 ? "2+1" : "3+1"; })
        .def("__repr__", [](const FieldConfiguration& c) {
            return "Field(eB=" + std::to_string(c.eB) + ", l0=" + std::to_string(c.l0) + ", mu=" + std::to_string(c.mu) +
                   ", M=" + std::to_string(c.M) + ")";
        });

    m.def("gamma_fn", &specfun::gamma_fn, py::arg("x"));
    m.def("bessel_j", &specfun::bessel_j, py::arg("nu"), py::arg("z"));
    m.def("laguerre_fn", [](int m_, double alpha, double x) { return specfun::laguerre_fn({m_, alpha}, x); },
          py::arg("m"), py::arg("alpha"), py::arg("x"));
    m.def("y_function", &y_function, py::arg("z"), py::arg("eta"), py::arg("mu"));

    m.def(
        "omega",
        [](int m_, int l, int sigma, const FieldConfiguration& cfg, const std::string& ext, std::optional<double> p3) {
            return omega_spectrum({m_, l, sigma, p3}, cfg, extension_of(ext));
        },
        py::arg("m"), py::arg("l"), py::arg("sigma"), py::arg("field"), py::arg("extension") = "-pi/2",
        py::arg("p3") = py::none());

    m.def(
        "kernel",
        [](cplx s, const std::vector<double>& x, const std::vector<double>& xp, const FieldConfiguration& cfg,
           const std::string& ext, bool anticausal) {
            const ProperTime pt{s, anticausal ? Side::Anticausal : Side::Causal};
            return Matrix(f_total(pt, reduce(point_of(x), point_of(xp), cfg), cfg, extension_of(ext)));
        },
        "proper-time kernel f(s; x, x')", py::arg("s"), py::arg("x"), py::arg("x_prime"), py::arg("field"),
        py::arg("extension") = "-pi/2", py::arg("anticausal") = false);

    m.def(
        "scalar_kernel",
        [](cplx s, const std::vector<double>& x, const std::vector<double>& xp, const FieldConfiguration& cfg, int D) {
            return f_scalar(ProperTime{s}, reduce(point_of(x), point_of(xp), cfg), cfg, D);
        },
        py::arg("s"), py::arg("x"), py::arg("x_prime"), py::arg("field"), py::arg("D") = 2);

    m.def(
        "propagator",
        [](const std::string& kind, const std::vector<double>& x, const std::vector<double>& xp,
           const FieldConfiguration& cfg, const std::string& ext, double damping, bool spin_down) {
            PropagatorOptions o;
            o.damping = damping;
            o.spin_down = spin_down;
            const auto v = propagator(propagator_kind_of(kind), point_of(x), point_of(xp), cfg, extension_of(ext), o);
            return py::make_tuple(Matrix(v.value), v.error_estimate);
        },
        "(value, error_estimate) of S^c, S^cbar, S, S^ret or S^adv", py::arg("kind"), py::arg("x"), py::arg("x_prime"),
        py::arg("field"), py::arg("extension") = "-pi/2", py::arg("damping") = 0.0, py::arg("spin_down") = false);

    m.def(
        "nonrel_kernel",
        [](cplx tau, const std::vector<double>& x, const std::vector<double>& xp, const FieldConfiguration& cfg,
           const std::string& ext, const std::string& species, const std::string& spin) {
            return nonrel_kernel(nonrel_kind_of(species, spin), reduce(point_of(x), point_of(xp), cfg), cfg, tau,
                                 extension_of(ext));
        },
        py::arg("tau"), py::arg("x"), py::arg("x_prime"), py::arg("field"), py::arg("extension") = "-pi/2",
        py::arg("species") = "particle", py::arg("spin") = "up");

    m.def("checks", [] {
        std::vector<std::string> ids;
        for (const auto& c : checks::catalog()) ids.push_back(c.id);
        return ids;
    });
    m.def(
        "verify",
        [](const std::vector<std::string>& only, int threads) {
            checks::VerifyOptions o;
            o.threads = threads;
            std::vector<checks::CheckResult> rows;
            {
                py::gil_scoped_release release;
                rows = checks::run_suite(only, o);
            }
            py::list out;
            for (const auto& r : rows) out.append(result_dict(r));
            return out;
        },
        py::arg("only") = std::vector<std::string>{}, py::arg("threads") = 1);
}
