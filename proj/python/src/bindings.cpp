#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>
#include <vector>

#include "spin_epsilon/circuit.hpp"
#include "spin_epsilon/classical_machine.hpp"
#include "spin_epsilon/errors.hpp"
#include "spin_epsilon/ising.hpp"
#include "spin_epsilon/oracle.hpp"
#include "spin_epsilon/quantum_machine.hpp"
#include "spin_epsilon/sweep.hpp"
#include "spin_epsilon/verify.hpp"

namespace py = pybind11;
namespace se = spin_epsilon;

namespace {

se::IsingParams make_params(double J, double B, double T) {
  if (std::isinf(T) && T > 0) return se::IsingParams::infinite_temperature(J, B);
  return se::IsingParams::make(J, B, T);
}

std::vector<int> symbols_of(const se::Trajectory& traj) { return {traj.symbols.begin(), traj.symbols.end()}; }

se::Spacing spacing_of(const std::string& name) {
  if (name == "log") return se::Spacing::log;
  if (name == "linear") return se::Spacing::linear;
  throw se::InvalidInput("spacing must be 'log' or 'linear'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Classical and quantum statistical complexity of the 1D Ising chain";

  py::register_exception<se::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<se::SizeError>(m, "SizeError", PyExc_ValueError);
  py::register_exception<se::InvalidInput>(m, "InvalidInput", PyExc_ValueError);

  py::class_<se::IsingParams>(m, "IsingParams")
      .def(py::init(&make_params), py::arg("J"), py::arg("B"), py::arg("T"))
      .def_property_readonly("J", &se::IsingParams::J)
      .def_property_readonly("B", &se::IsingParams::B)
      .def_property_readonly("T", &se::IsingParams::T)
      .def_property_readonly("beta", &se::IsingParams::beta)
      .def("__repr__", [](const se::IsingParams& p) {
        return "IsingParams(J=" + std::to_string(p.J()) + ", B=" + std::to_string(p.B()) +
               ", T=" + std::to_string(p.T()) + ")";
      });

  py::class_<se::TransitionMatrix>(m, "TransitionMatrix")
      .def_readonly("t", &se::TransitionMatrix::t)
      .def_readonly("p", &se::TransitionMatrix::p)
      .def("rows_coincide", &se::TransitionMatrix::rows_coincide, py::arg("tol") = 1e-12);

  py::class_<se::QuantumModel>(m, "QuantumModel")
      .def_readonly("amp", &se::QuantumModel::amp)
      .def_readonly("weights", &se::QuantumModel::weights)
      .def("overlap", &se::QuantumModel::overlap);

  py::class_<se::FutureDistribution>(m, "FutureDistribution")
      .def_readonly("length", &se::FutureDistribution::length)
      .def_readonly("probs", &se::FutureDistribution::probs)
      .def("label", &se::FutureDistribution::label)
      .def("as_dict", [](const se::FutureDistribution& d) {
        py::dict out;
        for (std::size_t i = 0; i < d.probs.size(); ++i) out[py::str(d.label(i))] = d.probs[i];
        return out;
      });

  py::class_<se::SweepRow>(m, "SweepRow")
      .def_readonly("T", &se::SweepRow::T)
      .def_readonly("J", &se::SweepRow::J)
      .def_readonly("B", &se::SweepRow::B)
      .def_readonly("p0", &se::SweepRow::p0)
      .def_readonly("p1", &se::SweepRow::p1)
      .def_readonly("T00", &se::SweepRow::T00)
      .def_readonly("T01", &se::SweepRow::T01)
      .def_readonly("T10", &se::SweepRow::T10)
      .def_readonly("T11", &se::SweepRow::T11)
      .def_readonly("fidelity", &se::SweepRow::fidelity)
      .def_readonly("c_mu", &se::SweepRow::c_mu)
      .def_readonly("c_q", &se::SweepRow::c_q)
      .def_readonly("ratio", &se::SweepRow::ratio)
      .def("csv", &se::format_csv_row);

  py::class_<se::TmaxResult>(m, "TmaxResult")
      .def_readonly("t_max", &se::TmaxResult::t_max)
      .def_readonly("cq_max", &se::TmaxResult::cq_max)
      .def_readonly("cmu_at_t_max", &se::TmaxResult::cmu_at_t_max)
      .def_readonly("interior", &se::TmaxResult::interior)
      .def_readonly("unimodal", &se::TmaxResult::unimodal);

  py::class_<se::CheckResult>(m, "CheckResult")
      .def_readonly("name", &se::CheckResult::name)
      .def_readonly("passed", &se::CheckResult::pass)
      .def_readonly("detail", &se::CheckResult::detail)
      .def_readonly("seconds", &se::CheckResult::seconds);

  m.attr("CSV_HEADER") = std::string(se::kSweepCsvHeader);

  m.def("transition_matrix", &se::transition_matrix, py::arg("params"));
  m.def("uniform_transition_matrix", &se::uniform_transition_matrix);
  m.def("statistical_complexity", &se::statistical_complexity, py::arg("tm"));
  m.def("future_distribution", &se::future_distribution, py::arg("tm"), py::arg("start"), py::arg("length"));
  m.def("classical_fidelity", &se::classical_fidelity, py::arg("tm"), py::arg("length"));
  m.def("build_quantum_model", &se::build_quantum_model, py::arg("tm"));
  m.def("quantum_statistical_complexity", &se::quantum_statistical_complexity, py::arg("model"));
  m.def("two_state_mixture_entropy", &se::two_state_mixture_entropy, py::arg("p0"), py::arg("f"));
  m.def("compute_row", &se::compute_row, py::arg("params"));
  m.def("find_tmax", &se::find_tmax, py::arg("J"), py::arg("B"), py::arg("t_min") = 0.05, py::arg("t_max") = 100.0,
        py::arg("tol") = 1e-6);
  m.def("temperature_grid",
        [](double t_min, double t_max, std::size_t points, const std::string& spacing) {
          return se::temperature_grid(t_min, t_max, points, spacing_of(spacing));
        },
        py::arg("t_min"), py::arg("t_max"), py::arg("points"), py::arg("spacing") = "log");
  m.def("sweep",
        [](double J, double B, const std::vector<double>& temps, std::size_t workers) {
          py::gil_scoped_release release;
          return se::run_sweep(J, B, temps, workers == 0 ? se::worker_count() : workers);
        },
        py::arg("J"), py::arg("B"), py::arg("temps"), py::arg("workers") = 0);

  m.def("exact_output_distribution",
        [](const se::QuantumModel& model, std::size_t start, std::size_t length) {
          return se::exact_output_distribution(se::build_step_unitaries(model), start, length);
        },
        py::arg("model"), py::arg("start"), py::arg("length"));
  m.def("simulate_classical",
        [](const se::TransitionMatrix& tm, std::size_t steps, std::size_t start, std::uint64_t seed) {
          return symbols_of(se::sample_trajectory(tm, start, steps, seed));
        },
        py::arg("tm"), py::arg("steps"), py::arg("start") = 0, py::arg("seed") = 42);
  m.def("simulate_quantum",
        [](const se::TransitionMatrix& tm, std::size_t steps, std::size_t start, std::uint64_t seed) {
          const auto su = se::build_step_unitaries(se::build_quantum_model(tm));
          return symbols_of(se::sample_quantum_trajectory(su, start, steps, seed));
        },
        py::arg("tm"), py::arg("steps"), py::arg("start") = 0, py::arg("seed") = 42);

  m.def("ring_conditional",
        [](const se::IsingParams& params, std::size_t n_half, int condition, std::size_t length) {
          if (condition != 1 && condition != -1) throw se::InvalidInput("condition must be +1 or -1");
          return se::conditional_from_ring(se::enumerate_ring(params, n_half), static_cast<se::Symbol>(condition),
                                           length);
        },
        py::arg("params"), py::arg("n_half"), py::arg("condition"), py::arg("length"));

  m.def("verify",
        [](const std::string& level, std::uint64_t seed) {
          if (level != "quick" && level != "full") throw se::InvalidInput("level must be 'quick' or 'full'");
          se::VerifyOptions options;
          options.level = level == "full" ? se::VerifyLevel::full : se::VerifyLevel::quick;
          options.seed = seed;
          py::gil_scoped_release release;
          return se::run_verification(options);
        },
        py::arg("level") = "quick", py::arg("seed") = 42);
}
