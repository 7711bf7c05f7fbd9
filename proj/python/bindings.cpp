#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "helmholtz/bounds.hpp"
#include "helmholtz/oracle.hpp"

namespace py = pybind11;
using namespace helmholtz;

namespace {

Spectrum make_spectrum(BasisFamily f, const std::vector<std::pair<int, cplx>>& coeffs) {
  return Spectrum(f, coeffs);
}

py::array_t<cplx> grid_values(const SeriesSolution& u, const std::vector<double>& xs,
                              const std::vector<double>& ys) {
  const auto pts = evaluate_grid(u, xs, ys);
  py::array_t<cplx> out({xs.size(), ys.size()});
  auto r = out.mutable_unchecked<2>();
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = 0; j < ys.size(); ++j) r(i, j) = pts[i * ys.size() + j].value;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral Helmholtz solver on the unit square";

  py::enum_<BoundaryOperator>(m, "BoundaryOperator")
      .value("Dirichlet", BoundaryOperator::Dirichlet)
      .value("Neumann", BoundaryOperator::Neumann)
      .value("Impedance", BoundaryOperator::Impedance);
  py::enum_<BasisFamily>(m, "BasisFamily")
      .value("SinInt", BasisFamily::SinInt)
      .value("CosInt", BasisFamily::CosInt)
      .value("SinHalf", BasisFamily::SinHalf)
      .value("CosHalf", BasisFamily::CosHalf);
  py::enum_<Side>(m, "Side")
      .value("Gamma1", Side::Gamma1)
      .value("Gamma2", Side::Gamma2)
      .value("Gamma3", Side::Gamma3)
      .value("Gamma4", Side::Gamma4);
  py::enum_<TheoremId>(m, "TheoremId")
      .value("T1_G4", TheoremId::T1_G4)
      .value("T2_G2_IMP", TheoremId::T2_G2_IMP)
      .value("T2_G2_NEU", TheoremId::T2_G2_NEU)
      .value("T2_G2_DIR", TheoremId::T2_G2_DIR)
      .value("TF_SOURCE", TheoremId::TF_SOURCE)
      .value("T3_LIFT_NEU", TheoremId::T3_LIFT_NEU)
      .value("T3_LIFT_DIR", TheoremId::T3_LIFT_DIR);

  py::class_<BoundaryConfig>(m, "BoundaryConfig")
      .def(py::init([](BoundaryOperator b1, BoundaryOperator b2, BoundaryOperator b3) {
             BoundaryConfig c;
             c.b1 = b1;
             c.b2 = b2;
             c.b3 = b3;
             c.validate();
             return c;
           }),
           py::arg("b1") = BoundaryOperator::Neumann, py::arg("b2") = BoundaryOperator::Impedance,
           py::arg("b3") = BoundaryOperator::Neumann)
      .def_readonly("b1", &BoundaryConfig::b1)
      .def_readonly("b2", &BoundaryConfig::b2)
      .def_readonly("b3", &BoundaryConfig::b3)
      .def_readonly("b4", &BoundaryConfig::b4)
      .def("vertical_family", &BoundaryConfig::vertical_family)
      .def("__repr__", [](const BoundaryConfig& c) { return "BoundaryConfig(" + describe(c) + ")"; });

  py::class_<Spectrum>(m, "Spectrum")
      .def(py::init(&make_spectrum), py::arg("family"), py::arg("coeffs"))
      .def_static("single", &Spectrum::single, py::arg("family"), py::arg("n"), py::arg("value") = cplx(1.0))
      .def_property_readonly("family", &Spectrum::family)
      .def_property_readonly("coeffs", &Spectrum::coeffs)
      .def("expand", &Spectrum::expand);

  py::class_<DataNormReport>(m, "DataNormReport")
      .def_readonly("l2", &DataNormReport::l2)
      .def_readonly("fractional_half", &DataNormReport::fractional_half)
      .def_readonly("fractional_three_half", &DataNormReport::fractional_three_half);
  m.def("data_norms", &data_norms);

  py::class_<SeriesSolution>(m, "SeriesSolution")
      .def_readonly("k", &SeriesSolution::k)
      .def_readonly("truncation", &SeriesSolution::truncation)
      .def_readonly("config", &SeriesSolution::config)
      .def_property_readonly("n_terms", [](const SeriesSolution& u) { return u.terms.size(); });

  py::class_<EnergyReport>(m, "EnergyReport")
      .def_readonly("grad_norm", &EnergyReport::grad_norm)
      .def_readonly("l2_norm", &EnergyReport::l2_norm)
      .def_readonly("energy", &EnergyReport::energy);

  m.def("solve_vertical_data", &solve_vertical_data, py::arg("config"), py::arg("side"), py::arg("data"),
        py::arg("k"), py::arg("N") = std::nullopt);
  m.def("lift_horizontal_data", &lift_horizontal_data, py::arg("g"), py::arg("side"), py::arg("config"),
        py::arg("k"), py::arg("N") = std::nullopt);
  m.def("superpose", &superpose);
  m.def(
      "evaluate",
      [](const SeriesSolution& u, double x, double y) {
        const PointValue p = evaluate(u, x, y);
        return py::make_tuple(p.value, p.dx, p.dy);
      },
      py::arg("u"), py::arg("x"), py::arg("y"));
  m.def("evaluate_grid", &grid_values, py::arg("u"), py::arg("xs"), py::arg("ys"));
  m.def("boundary_trace", &boundary_trace);
  m.def("energy_parseval", &energy_parseval);
  m.def("energy_quadrature", &energy_quadrature, py::arg("u"), py::arg("n") = 65);

  m.def("rhs_bound", &rhs_bound, py::arg("theorem"), py::arg("k"), py::arg("norms"));
  py::class_<BoundCertificate>(m, "BoundCertificate")
      .def_readonly("k", &BoundCertificate::k)
      .def_readonly("lhs", &BoundCertificate::lhs)
      .def_readonly("rhs", &BoundCertificate::rhs)
      .def_readonly("ratio", &BoundCertificate::ratio)
      .def_readonly("passed", &BoundCertificate::pass);
  m.def("certify", &certify, py::arg("theorem"), py::arg("config"), py::arg("placement"), py::arg("data"),
        py::arg("k"), py::arg("N") = std::nullopt);

  m.def(
      "sharpness",
      [](const std::string& id, int n) {
        const SharpnessCase c = sharpness_case(parse_sharpness(id), n);
        py::dict d;
        d["k"] = c.k;
        d["energy"] = energy_parseval(solve_sharpness_datum(c)).energy;
        d["expected_energy"] = c.expected_energy;
        d["expected_energy_sq"] = c.expected_energy_sq;
        d["lower_bound"] = c.lower_bound;
        return d;
      },
      py::arg("case_id"), py::arg("n"));

  m.def(
      "fdm",
      [](const BoundaryConfig& config, double k, std::optional<Spectrum> g1, std::optional<Spectrum> g2,
         std::optional<Spectrum> g3, std::optional<Spectrum> g4, int n) {
        const GridSolution gs = fdm_solve(fdm_problem(config, k, {g1, g2, g3, g4}), n);
        py::array_t<cplx> out({gs.n, gs.n});
        auto r = out.mutable_unchecked<2>();
        for (int i = 0; i < gs.n; ++i)
          for (int j = 0; j < gs.n; ++j) r(i, j) = gs.at(i, j);
        return out;
      },
      py::arg("config"), py::arg("k"), py::arg("g1") = std::nullopt, py::arg("g2") = std::nullopt,
      py::arg("g3") = std::nullopt, py::arg("g4") = std::nullopt, py::arg("n") = 65);
}
