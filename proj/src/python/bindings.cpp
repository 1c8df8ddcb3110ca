#include "lieprop/errors.hpp"
#include "lieprop/evolve.hpp"
#include "lieprop/kernels.hpp"
#include "lieprop/oracle.hpp"
#include "lieprop/sl2rep.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lieprop;

namespace {

py::array_t<Complex> to_array(const GridWavefunction& psi) {
    return py::array_t<Complex>(static_cast<py::ssize_t>(psi.samples.size()), psi.samples.data());
}

GridWavefunction from_array(py::array_t<Complex, py::array::c_style | py::array::forcecast> values,
                            const GridSpec& grid) {
    if (values.ndim() != 1) throw DomainError("wavefunction samples must be one-dimensional");
    return GridWavefunction(std::vector<Complex>(values.data(), values.data() + values.size()), grid);
}

// Raise `type` with extra attributes set on the instance.
void raise_with(PyObject* type, const char* what, const char* attr, double value) {
    py::object exc = py::reinterpret_borrow<py::object>(type)(what);
    exc.attr(attr) = value;
    PyErr_SetObject(type, exc.ptr());
}

}  // namespace

PYBIND11_MODULE(_lieprop, m) {
    m.doc() = "Propagators for the oscillator with an inverse-square potential";

    static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
    static py::exception<CausticSingularity> caustic(m, "CausticSingularity", domain_error.ptr());
    static py::exception<NonConvergence> nonconvergence(m, "NonConvergence", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const CausticSingularity& e) {
            raise_with(caustic.ptr(), e.what(), "nearest_caustic_time", e.nearest_caustic_time());
        } catch (const NonConvergence& e) {
            raise_with(nonconvergence.ptr(), e.what(), "achieved_estimate", e.achieved_estimate());
        } catch (const DomainError& e) {
            domain_error(e.what());
        }
    });

    py::class_<PhysParams>(m, "PhysParams")
        .def(py::init<double, double, double, double>(), py::arg("hbar") = 1.0, py::arg("mass") = 1.0,
             py::arg("omega") = 1.0, py::arg("n") = 0.5)
        .def_static("from_lambda", &PhysParams::from_lambda, py::arg("hbar"), py::arg("mass"), py::arg("omega"),
                    py::arg("lam"))
        .def_property_readonly("hbar", &PhysParams::hbar)
        .def_property_readonly("mass", &PhysParams::mass)
        .def_property_readonly("omega", &PhysParams::omega)
        .def_property_readonly("n", &PhysParams::n)
        .def_property_readonly("lam", &PhysParams::lambda)
        .def("__repr__", [](const PhysParams& p) {
            return "PhysParams(hbar=" + std::to_string(p.hbar()) + ", mass=" + std::to_string(p.mass()) +
                   ", omega=" + std::to_string(p.omega()) + ", n=" + std::to_string(p.n()) + ")";
        });

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](double x_max, int points, double dt, double x_min) {
                 GridSpec g{x_max, points, dt, x_min};
                 g.validate();
                 return g;
             }),
             py::arg("x_max") = 20.0, py::arg("points") = 2000, py::arg("dt") = 1e-3, py::arg("x_min") = 0.0)
        .def_readonly("x_max", &GridSpec::x_max)
        .def_readonly("x_min", &GridSpec::x_min)
        .def_readonly("points", &GridSpec::points)
        .def_readonly("dt", &GridSpec::dt)
        .def_property_readonly("dx", &GridSpec::dx)
        .def("nodes", [](const GridSpec& g) {
            py::array_t<double> out(g.size());
            auto v = out.mutable_unchecked<1>();
            for (int i = 0; i < g.size(); ++i) v(i) = g.node(i);
            return out;
        });

    py::class_<GridWavefunction>(m, "Wavefunction")
        .def(py::init(&from_array), py::arg("samples"), py::arg("grid"))
        .def_property_readonly("samples", &to_array)
        .def_readonly("grid", &GridWavefunction::grid)
        .def("norm", &GridWavefunction::norm);
    m.def("l2_distance", &l2_distance);

    py::enum_<kernels::KernelKind>(m, "KernelKind")
        .value("FREE", kernels::KernelKind::Free)
        .value("SHO", kernels::KernelKind::Sho)
        .value("RADIAL_H0", kernels::KernelKind::RadialH0)
        .value("RADIAL_SHO", kernels::KernelKind::RadialSho);

    py::enum_<sl2::IdentityId>(m, "Identity")
        .value("MAIN", sl2::IdentityId::Main)
        .value("A1a", sl2::IdentityId::A1a)
        .value("A1b", sl2::IdentityId::A1b)
        .value("A2a", sl2::IdentityId::A2a)
        .value("A2b", sl2::IdentityId::A2b)
        .value("A3a", sl2::IdentityId::A3a)
        .value("A3b", sl2::IdentityId::A3b);

    py::class_<sl2::FactorCoeffs>(m, "FactorCoeffs")
        .def_readonly("alpha", &sl2::FactorCoeffs::alpha)
        .def_readonly("beta", &sl2::FactorCoeffs::beta)
        .def_readonly("gamma", &sl2::FactorCoeffs::gamma)
        .def_readonly("identity", &sl2::FactorCoeffs::identity);

    m.def("factor_coeffs", &sl2::factor_coeffs, py::arg("identity"), py::arg("t"), py::arg("params"));
    m.def("identity_residual", &sl2::identity_residual, py::arg("identity"), py::arg("t"), py::arg("params"));
    m.def("within_validity_window", &sl2::within_validity_window, py::arg("identity"), py::arg("t"),
          py::arg("params"));

    m.def("effective_time", py::overload_cast<double, double>(&kernels::effective_time), py::arg("t"),
          py::arg("omega"));
    m.def(
        "kernel",
        [](kernels::KernelKind kind, double x1, double x2, double t, const PhysParams& p) {
            return kernels::evaluate_kernel(kind, {x1, x2, t}, p).value;
        },
        py::arg("kind"), py::arg("x1"), py::arg("x2"), py::arg("t"), py::arg("params"));
    m.def(
        "kernel_bessel_form",
        [](kernels::KernelKind kind, double x1, double x2, double t, const PhysParams& p) {
            return kernels::radial_kernel_bessel_form(kind, {x1, x2, t}, p).value;
        },
        py::arg("kind"), py::arg("x1"), py::arg("x2"), py::arg("t"), py::arg("params"));
    m.def("kernel_at_complex_time", &kernels::kernel_at_complex_time, py::arg("kind"), py::arg("x1"), py::arg("x2"),
          py::arg("t"), py::arg("params"));

    m.def(
        "hankel_oracle",
        [](double x1, double x2, double t, const PhysParams& p) {
            const oracle::HankelResult r = oracle::refined_hankel_oracle({x1, x2, t}, p);
            return py::make_tuple(r.value, r.error_estimate);
        },
        py::arg("x1"), py::arg("x2"), py::arg("t"), py::arg("params"),
        "Spectral-integral value of the radial kernel and its error estimate.");
    m.def(
        "crank_nicolson",
        [](const GridWavefunction& psi, double t, const PhysParams& p) {
            const oracle::GridEvolution r = oracle::grid_evolve(psi, t, p);
            return py::make_tuple(r.psi, r.boundary_contaminated);
        },
        py::arg("psi"), py::arg("t"), py::arg("params"));
    m.def(
        "eigenfunction_residual",
        [](double k, double n, const PhysParams& p, const GridSpec& g, double min_x) {
            return oracle::eigenfunction_residual(k, BesselOrder(n), p, g, min_x);
        },
        py::arg("k"), py::arg("n"), py::arg("params"),
          py::arg("grid"), py::arg("min_x") = 0.0);

    py::class_<evolve::TestFunction>(m, "GaussianPacket")
        .def(py::init([](double center, double width, double momentum, double amplitude) {
                 evolve::TestFunction f{center, width, momentum, amplitude};
                 f.validate();
                 return f;
             }),
             py::arg("center") = 3.0, py::arg("width") = 0.4, py::arg("momentum") = 0.0, py::arg("amplitude") = 1.0)
        .def("__call__", &evolve::TestFunction::operator(), py::arg("x"), py::arg("params"))
        .def("sample", [](const evolve::TestFunction& f, const GridSpec& g, const PhysParams& p) {
            return evolve::sample(f, g, p);
        });

    m.def(
        "propagate",
        [](const GridWavefunction& psi, double t, kernels::KernelKind kind, const PhysParams& p) {
            py::gil_scoped_release release;
            const evolve::Propagation r = evolve::propagate(psi, t, kind, p);
            return std::make_pair(r.psi, r.norm_drift);
        },
        py::arg("psi"), py::arg("t"), py::arg("kind"), py::arg("params"));
    m.def("schrodinger_residual",
          [](kernels::KernelKind kind, double x1, double x2, double t, const PhysParams& p, double dx, double dt) {
              return evolve::schrodinger_residual(kind, {x1, x2, t}, p, dx, dt);
          },
          py::arg("kind"), py::arg("x1"), py::arg("x2"), py::arg("t"), py::arg("params"), py::arg("dx"),
          py::arg("dt"));
    m.def(
        "delta_limit",
        [](const evolve::TestFunction& f, double x1, const std::vector<double>& ts, kernels::KernelKind kind,
           const PhysParams& p) { return evolve::delta_limit_check(f, x1, ts, kind, p); },
        py::arg("packet"), py::arg("x1"), py::arg("times"), py::arg("kind"), py::arg("params"));
    m.def(
        "dilate",
        [](const GridWavefunction& psi, double gamma, const PhysParams& p) {
            const evolve::Dilation d = evolve::dilation_apply(psi, gamma, p);
            return py::make_tuple(d.psi, d.interpolation_error);
        },
        py::arg("psi"), py::arg("gamma"), py::arg("params"));
}
