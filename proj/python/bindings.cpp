#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "solenoid/commands.hpp"
#include "solenoid/dynamics.hpp"
#include "solenoid/errors.hpp"
#include "solenoid/gauge.hpp"

namespace py = pybind11;
using namespace solenoid;

namespace {

RunConfig config_from(const py::object& obj) {
  // accept a dict (or anything json.dumps can serialize)
  const auto text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return parse_config(nlohmann::json::parse(text));
}

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::array_t<double> density_matrix(const Trajectory& traj) {
  const auto rows = traj.records.size();
  const auto cols = rows ? traj.records.front().values.size() : 0;
  py::array_t<double> out({rows, cols});
  auto m = out.mutable_unchecked<2>();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = traj.records[r].values[c];
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Laser-assisted hopping in Laguerre-Gauss beams: flux maps and wavepacket dynamics";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalGuardError>(m, "NumericalGuardError", PyExc_RuntimeError);

  py::enum_<ExponentConvention>(m, "ExponentConvention")
      .value("paper", ExponentConvention::paper)
      .value("standard", ExponentConvention::standard);
  py::enum_<LatticeKind>(m, "LatticeKind")
      .value("ring", LatticeKind::ring)
      .value("square", LatticeKind::square)
      .value("dimer", LatticeKind::dimer);

  m.def("laguerre", &laguerre, py::arg("p"), py::arg("alpha"), py::arg("x"));
  m.def(
      "lg_radial_amplitude",
      [](int p, int l, double waist, double r, ExponentConvention conv) {
        return lg_radial_amplitude(LGMode{p, l, waist}, r, conv);
      },
      py::arg("p"), py::arg("l"), py::arg("waist"), py::arg("r"),
      py::arg("convention") = ExponentConvention::paper);

  py::class_<Lattice>(m, "Lattice")
      .def_property_readonly("kind", &Lattice::kind)
      .def_property_readonly("size", &Lattice::size)
      .def_property_readonly("extent", &Lattice::extent)
      .def("positions",
           [](const Lattice& l) {
             std::vector<std::pair<double, double>> out;
             for (const auto& s : l.sites()) out.emplace_back(s.position.x, s.position.y);
             return out;
           })
      .def("links", [](const Lattice& l) {
        std::vector<std::pair<int, int>> out;
        for (const auto& k : l.links()) out.emplace_back(k.g, k.e);
        return out;
      });
  m.def("build_ring", &build_ring, py::arg("n_sites"), py::arg("spacing") = 1.0);
  m.def(
      "build_square",
      [](int side, double spacing, std::pair<double, double> offset) {
        return build_square(side, spacing, {offset.first, offset.second});
      },
      py::arg("side"), py::arg("spacing") = 1.0, py::arg("center_offset") = std::pair<double, double>{0.0, 0.0});
  m.def("build_dimer", &build_dimer, py::arg("spacing") = 1.0);

  py::class_<HoppingMatrix>(m, "HoppingMatrix")
      .def_property_readonly("spin_dim", &HoppingMatrix::spin_dim)
      .def_property_readonly("hop_scale", &HoppingMatrix::hop_scale)
      .def("entry", &HoppingMatrix::entry)
      .def("max_row_sum", &HoppingMatrix::max_row_sum)
      .def("hermiticity_error", &HoppingMatrix::hermiticity_error)
      .def("to_dense", &HoppingMatrix::to_dense);
  m.def("phase_only_hopping", &phase_only_hopping, py::arg("lattice"), py::arg("l"), py::arg("j0") = 0.05);
  m.def("build_nonabelian", &build_nonabelian);
  m.def(
      "plaquette_fluxes",
      [](const Lattice& lattice, const HoppingMatrix& h) {
        const FluxMap map = flux_map(lattice, h);
        py::array_t<double> out({map.rows, map.cols});
        auto v = out.mutable_unchecked<2>();
        for (int r = 0; r < map.rows; ++r) {
          for (int c = 0; c < map.cols; ++c) v(r, c) = map.at(r, c);
        }
        return out;
      });
  m.def("loop_phase", [](const HoppingMatrix& h, std::vector<int> loop) { return loop_phase(h, loop); });

  m.def(
      "evolve",
      [](const py::object& config) {
        const EvolveResult res = run_evolve(config_from(config));
        py::dict out;
        out["times"] = [&] {
          std::vector<double> t;
          for (const auto& rec : res.trajectory.records) t.push_back(rec.time);
          return t;
        }();
        out["density"] = density_matrix(res.trajectory);
        out["spin_dim"] = res.trajectory.meta.spin_dim;
        out["verdict"] = std::string(to_string(res.verdict));
        out["metrics"] = to_python(res.metrics_json);
        out["manifest"] = to_python(res.manifest);
        return out;
      },
      py::arg("config"), "Run the evolution described by a config dict and return densities and metrics.");
  m.def("resolve_config", [](const py::object& config) { return to_python(to_json(config_from(config))); });
  m.def("fluxmap", [](const py::object& config, const std::filesystem::path& out) {
    return to_python(cmd_fluxmap(config_from(config), out));
  });
  m.def("oracle_check", [](const py::object& config, const std::filesystem::path& out) {
    const auto rep = cmd_oracle_check(config_from(config), out);
    return to_python(rep.report);
  });
}
