#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cohlim/charts.hpp"
#include "cohlim/coherent.hpp"
#include "cohlim/dynamics.hpp"
#include "cohlim/error.hpp"
#include "cohlim/hamiltonian.hpp"
#include "cohlim/limits.hpp"
#include "cohlim/nbody.hpp"
#include "cohlim/observable.hpp"
#include "cohlim/rep.hpp"

namespace py = pybind11;
using namespace cohlim;

namespace {

OperatorSpec to_operator(const py::object& obj) {
    if (py::isinstance<Generator>(obj)) return obj.cast<Generator>();
    if (py::isinstance<HamiltonianPolynomial>(obj)) return obj.cast<HamiltonianPolynomial>();
    const auto text = obj.cast<std::string>();
    try {
        return parse_generator(text);
    } catch (const DomainError&) {
        return HamiltonianPolynomial::parse(text);
    }
}

HamiltonianPolynomial to_polynomial(const py::object& obj) {
    if (py::isinstance<HamiltonianPolynomial>(obj)) return obj.cast<HamiltonianPolynomial>();
    return HamiltonianPolynomial::parse(obj.cast<std::string>());
}

py::list samples_to_list(const Trajectory& traj) {
    py::list out;
    for (const auto& s : traj.samples) {
        py::dict row;
        row["t"] = s.t;
        for (const auto& [name, value] : s.observables) row[py::str(name)] = value;
        if (const auto* cs = std::get_if<ClassicalState>(&s.state)) {
            row["v"] = cs->v;
            row["w"] = cs->w;
        }
        out.append(row);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_cohlim, m) {
    m.doc() = "SU(1,1) coherent states and their large-N classical limit";

    auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<TruncationError>(m, "TruncationError", domain_error.ptr());
    py::register_exception<TruncationGuardError>(m, "TruncationGuardError", PyExc_RuntimeError);

    py::enum_<Generator>(m, "Generator")
        .value("K0", Generator::K0)
        .value("K1", Generator::K1)
        .value("K2", Generator::K2)
        .value("Kplus", Generator::Kplus)
        .value("Kminus", Generator::Kminus)
        .value("Casimir", Generator::Casimir)
        .value("A", Generator::A)
        .value("B", Generator::B)
        .value("C", Generator::C);

    py::enum_<Chart>(m, "Chart")
        .value("xi", Chart::Xi)
        .value("zeta", Chart::Zeta)
        .value("tau", Chart::Tau)
        .value("polar", Chart::Polar)
        .value("halfplane", Chart::HalfPlane)
        .value("canonical", Chart::Canonical);

    py::enum_<Ordering>(m, "Ordering").value("literal", Ordering::Literal).value("symmetrized", Ordering::Symmetrized);

    py::class_<RepParams>(m, "RepParams")
        .def(py::init([](int n, double k, int cutoff) {
                 RepParams rep{n, k, cutoff};
                 rep.validate();
                 return rep;
             }),
             py::arg("N"), py::arg("k"), py::arg("cutoff"))
        .def_readonly("N", &RepParams::n_particles)
        .def_readonly("k", &RepParams::k)
        .def_readonly("cutoff", &RepParams::cutoff)
        .def_property_readonly("J", &RepParams::J)
        .def_property_readonly("dim", &RepParams::dim)
        .def("__repr__", [](const RepParams& r) {
            return "RepParams(N=" + std::to_string(r.n_particles) + ", k=" + std::to_string(r.k) +
                   ", cutoff=" + std::to_string(r.cutoff) + ")";
        });

    py::class_<OperatorMatrix>(m, "OperatorMatrix")
        .def_property_readonly("entries", &OperatorMatrix::entries)
        .def_property_readonly("rep", &OperatorMatrix::rep)
        .def_property_readonly("hermitian", &OperatorMatrix::hermitian)
        .def("__add__", &OperatorMatrix::operator+)
        .def("__sub__", &OperatorMatrix::operator-)
        .def("__matmul__", &OperatorMatrix::operator*)
        .def("adjoint", &OperatorMatrix::adjoint);

    py::class_<HamiltonianPolynomial>(m, "HamiltonianPolynomial")
        .def(py::init<>())
        .def_static("parse", &HamiltonianPolynomial::parse)
        .def_property_readonly("degree", &HamiltonianPolynomial::degree)
        .def_property_readonly("terms", [](const HamiltonianPolynomial& h) {
            py::dict out;
            for (const auto& [e, c] : h.terms()) out[py::make_tuple(e[0], e[1], e[2])] = c;
            return out;
        })
        .def("__str__", &HamiltonianPolynomial::to_string)
        .def("__eq__", &HamiltonianPolynomial::operator==);

    py::class_<PhaseObservable>(m, "PhaseObservable")
        .def_static("term", &PhaseObservable::term, py::arg("v_power"), py::arg("w_power"), py::arg("coefficient") = 1.0)
        .def_static("constant", &PhaseObservable::constant)
        .def_property_readonly("terms", [](const PhaseObservable& f) {
            py::dict out;
            for (const auto& [e, c] : f.terms()) out[py::make_tuple(e.first, e.second)] = c;
            return out;
        })
        .def("is_zero", &PhaseObservable::is_zero)
        .def("__call__", &PhaseObservable::evaluate, py::arg("v"), py::arg("w"))
        .def("__add__", &PhaseObservable::operator+)
        .def("__sub__", &PhaseObservable::operator-)
        .def("__mul__", py::overload_cast<const PhaseObservable&>(&PhaseObservable::operator*, py::const_))
        .def("__mul__", py::overload_cast<double>(&PhaseObservable::operator*, py::const_))
        .def("__rmul__", py::overload_cast<double>(&PhaseObservable::operator*, py::const_))
        .def("__eq__", &PhaseObservable::operator==)
        .def("__str__", &PhaseObservable::to_string);

    m.def("build_generator", &build_generator, py::arg("rep"), py::arg("generator"));
    m.def("commutator", &commutator);
    m.def("hamiltonian_matrix",
          [](const RepParams& rep, const py::object& h, Ordering ordering) {
              return hamiltonian_matrix(rep, to_polynomial(h), ordering);
          },
          py::arg("rep"), py::arg("h"), py::arg("ordering") = Ordering::Literal);

    m.def("convert",
          [](Chart from, std::array<double, 2> coords, Chart to, std::optional<double> k) {
              return convert(ChartPoint{from, coords}, to, k).coords;
          },
          py::arg("chart"), py::arg("coords"), py::arg("target"), py::arg("k") = py::none());
    m.def("metric_coefficient",
          [](Chart chart, std::array<double, 2> coords, double k) { return metric_coefficient({chart, coords}, k); },
          py::arg("chart"), py::arg("coords"), py::arg("k"));
    m.def("measure_density", &measure_density, py::arg("tau"), py::arg("J"));
    m.def("kahler_potential", &kahler_potential, py::arg("tau"), py::arg("k"));

    m.def("tail_cutoff", &tail_cutoff, py::arg("abs_tau"), py::arg("J"), py::arg("tail_tol") = kTailTolerance);
    m.def("rep_for_state", &rep_for_state, py::arg("N"), py::arg("k"), py::arg("tau"), py::arg("extra") = 0,
          py::arg("tail_tol") = kTailTolerance);
    m.def("coherent_vector",
          [](const RepParams& rep, cplx tau, double tail_tol) { return coherent_vector({rep, tau}, tail_tol).coefficients; },
          py::arg("rep"), py::arg("tau"), py::arg("tail_tol") = kTailTolerance);
    m.def("overlap_closed", &overlap_closed, py::arg("tau"), py::arg("tau2"), py::arg("J"));
    m.def("delta_exponent", &delta_exponent, py::arg("tau"), py::arg("tau2"), py::arg("k"));
    m.def("symbol",
          [](const OperatorMatrix& x, cplx tau) { return symbol(x, CoherentSpec{x.rep(), tau}); },
          py::arg("op"), py::arg("tau"));
    m.def("matrix_element_closed", &matrix_element_closed, py::arg("generator"), py::arg("tau"), py::arg("tau2"),
          py::arg("k"));
    m.def("identity_resolution_check",
          [](const RepParams& rep, int max_n, int order, const std::string& rule) {
              QuadratureParams q{order, QuadratureRule::GaussLegendre};
              if (rule == "jacobi") q.rule = QuadratureRule::GaussJacobi;
              else if (rule != "legendre") throw DomainError("rule must be legendre or jacobi");
              return identity_resolution_check(rep, max_n, q);
          },
          py::arg("rep"), py::arg("max_n"), py::arg("order") = 64, py::arg("rule") = "legendre");

    m.def("basic_symbol", &basic_symbol, py::arg("generator"), py::arg("k"));
    m.def("poisson_bracket", &poisson_bracket);
    m.def("classical_hamiltonian",
          [](const py::object& h, double k) { return classical_hamiltonian(to_polynomial(h), k); }, py::arg("h"),
          py::arg("k"));

    py::class_<LineFit>(m, "LineFit")
        .def_readonly("slope", &LineFit::slope)
        .def_readonly("intercept", &LineFit::intercept)
        .def_readonly("residual", &LineFit::residual);

    py::class_<SweepReport>(m, "SweepReport")
        .def_readonly("study", &SweepReport::study)
        .def_readonly("n_values", &SweepReport::n_values)
        .def_readonly("values", &SweepReport::values)
        .def_readonly("references", &SweepReport::references)
        .def_readonly("abs_errors", &SweepReport::abs_errors)
        .def_readonly("fitted", &SweepReport::fitted)
        .def_readonly("fit", &SweepReport::fit)
        .def_readonly("passed", &SweepReport::pass)
        .def_readonly("note", &SweepReport::note);

    m.def("overlap_decay_study", &overlap_decay_study, py::arg("tau"), py::arg("tau2"), py::arg("k"),
          py::arg("n_values"));
    m.def("factorization_defect",
          [](const py::object& x, const py::object& y, cplx tau, double k, const std::vector<int>& n) {
              return factorization_defect(to_operator(x), to_operator(y), tau, k, n);
          },
          py::arg("x"), py::arg("y"), py::arg("tau"), py::arg("k"), py::arg("n_values"));
    m.def("commutator_correspondence",
          [](const py::object& x, const py::object& y, cplx tau, double k, const std::vector<int>& n) {
              return commutator_correspondence(to_operator(x), to_operator(y), tau, k, n);
          },
          py::arg("x"), py::arg("y"), py::arg("tau"), py::arg("k"), py::arg("n_values"));
    m.def("hamiltonian_limit_check",
          [](const py::object& h, cplx tau, double k, const std::vector<int>& n) {
              return hamiltonian_limit_check(to_polynomial(h), tau, k, n);
          },
          py::arg("h"), py::arg("tau"), py::arg("k"), py::arg("n_values"));

    m.def("classical_evolve",
          [](const py::object& h, double k, double v, double w, const std::vector<double>& t_grid, double tol) {
              return samples_to_list(classical_evolve(classical_hamiltonian(to_polynomial(h), k), k, {v, w, 0.0}, t_grid, tol));
          },
          py::arg("h"), py::arg("k"), py::arg("v"), py::arg("w"), py::arg("t_grid"), py::arg("tol") = 1e-10);
    m.def("free_particle_analytic",
          [](double v, double w, double k, double t) {
              const auto s = free_particle_analytic({v, w, 0.0}, k, t);
              return std::make_pair(s.v, s.w);
          },
          py::arg("v"), py::arg("w"), py::arg("k"), py::arg("t"));
    m.def("quantum_evolve",
          [](const py::object& h, cplx tau0, double k, int n, const std::vector<double>& t_grid) {
              const HamiltonianPolynomial poly = to_polynomial(h);
              const RepParams rep = evolution_rep(poly, tau0, k, n, t_grid);
              return samples_to_list(quantum_evolve(hamiltonian_matrix(rep, poly, Ordering::Symmetrized),
                                                    coherent_vector({rep, tau0}), t_grid));
          },
          py::arg("h"), py::arg("tau0"), py::arg("k"), py::arg("N"), py::arg("t_grid"));
    m.def("correspondence_compare",
          [](const py::object& h, cplx tau0, double k, const std::vector<int>& n, const std::vector<double>& t_grid) {
              return correspondence_compare(to_polynomial(h), tau0, k, n, t_grid);
          },
          py::arg("h"), py::arg("tau0"), py::arg("k"), py::arg("n_values"), py::arg("t_grid"));

    m.def("casimir_check",
          [](int n, int d) {
              const nbody::MultiOscRep rep{n, d};
              rep.validate();
              const auto modes = nbody::build_mode_operators(rep);
              const auto inv = nbody::build_invariants(rep, modes);
              const auto spectrum = nbody::l_spectrum_check(rep, inv);
              py::list sectors;
              for (const auto& s : spectrum.sectors) {
                  py::dict row;
                  row["n_bar"] = s.total_excitation;
                  row["l"] = s.l;
                  row["eigenvalue"] = s.eigenvalue;
                  row["k"] = s.k;
                  row["multiplicity"] = s.multiplicity;
                  sectors.append(row);
              }
              py::dict out;
              out["residual"] = nbody::casimir_identity_check(rep, inv);
              out["l_spectrum_max_error"] = spectrum.max_error;
              out["sectors"] = sectors;
              return out;
          },
          py::arg("N"), py::arg("d"));
}
