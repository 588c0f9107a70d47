#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qre/dmrg_extrapolation.hpp"
#include "qre/errors.hpp"
#include "qre/instance_catalog.hpp"
#include "qre/logical_estimator.hpp"
#include "qre/physical_estimator.hpp"
#include "qre/qpe_performance_model.hpp"
#include "qre/utility_report.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core of the qre resource estimator";

  auto validation = py::register_exception<qre::ValidationError>(m, "ValidationError",
                                                                 PyExc_ValueError);
  py::register_exception<qre::InfeasibilityError>(m, "InfeasibilityError", PyExc_RuntimeError);
  py::register_exception<qre::IoError>(m, "IoError", PyExc_OSError);
  (void)validation;

  py::enum_<qre::NormVariant>(m, "NormVariant")
      .value("original", qre::NormVariant::original)
      .value("lpbliss", qre::NormVariant::lpbliss);

  py::class_<qre::NormRecord>(m, "NormRecord")
      .def_readonly("pauli_l1", &qre::NormRecord::pauli_l1)
      .def_readonly("df_l1", &qre::NormRecord::df_l1)
      .def_readonly("pauli_l1_lpbliss", &qre::NormRecord::pauli_l1_lpbliss)
      .def_readonly("df_l1_lpbliss", &qre::NormRecord::df_l1_lpbliss);

  py::class_<qre::HamiltonianInstance>(m, "HamiltonianInstance")
      .def_readonly("molecule_id", &qre::HamiltonianInstance::molecule_id)
      .def_readonly("reaction", &qre::HamiltonianInstance::reaction)
      .def_readonly("n_orbitals", &qre::HamiltonianInstance::n_orbitals)
      .def_readonly("n_electrons", &qre::HamiltonianInstance::n_electrons)
      .def_readonly("charge", &qre::HamiltonianInstance::charge)
      .def_readonly("multiplicity", &qre::HamiltonianInstance::multiplicity)
      .def_readonly("overlap_gamma", &qre::HamiltonianInstance::overlap_gamma)
      .def_readonly("norms", &qre::HamiltonianInstance::norms)
      .def("__repr__", [](const qre::HamiltonianInstance& h) {
        return "<HamiltonianInstance " + h.key().str() + ">";
      });

  m.def("load_catalog", &qre::load_catalog, py::arg("path"));
  m.def("parse_catalog", &qre::parse_catalog, py::arg("text"), py::arg("source") = "<string>");
  m.def("hilbert_space_log10", &qre::hilbert_space_log10, py::arg("n_orbitals"),
        py::arg("n_electrons"), py::arg("multiplicity"));
  m.def(
      "norm_reduction_ratios",
      [](double pauli, double df, double df_lpbliss) {
        qre::NormRecord r;
        r.pauli_l1 = pauli;
        r.df_l1 = df;
        r.df_l1_lpbliss = df_lpbliss;
        const auto ratios = qre::norm_reduction_ratios(r);
        return py::make_tuple(ratios.a_over_c, ratios.b_over_c);
      },
      py::arg("pauli_l1"), py::arg("df_l1"), py::arg("df_l1_lpbliss"));

  py::class_<qre::ErrorBudget>(m, "ErrorBudget")
      .def_readonly("epsilon", &qre::ErrorBudget::epsilon)
      .def_readonly("delta_bar", &qre::ErrorBudget::delta_bar)
      .def_readonly("p_qpe", &qre::ErrorBudget::p_qpe)
      .def_readonly("p_gs", &qre::ErrorBudget::p_gs)
      .def_readonly("p_hw", &qre::ErrorBudget::p_hw)
      .def_readonly("eps_sl", &qre::ErrorBudget::eps_sl)
      .def_readonly("eps_ang", &qre::ErrorBudget::eps_ang)
      .def_readonly("eps_coef", &qre::ErrorBudget::eps_coef)
      .def_readonly("eps_trunc", &qre::ErrorBudget::eps_trunc);

  py::class_<qre::AlgorithmParameters>(m, "AlgorithmParameters")
      .def_readonly("shots", &qre::AlgorithmParameters::shots)
      .def_readonly("shot_hw_tolerance", &qre::AlgorithmParameters::shot_hw_tolerance)
      .def_readonly("coeff_bits", &qre::AlgorithmParameters::coeff_bits)
      .def_readonly("angle_bits", &qre::AlgorithmParameters::angle_bits)
      .def_readonly("truncation_threshold", &qre::AlgorithmParameters::truncation_threshold)
      .def_readonly("iterations", &qre::AlgorithmParameters::iterations);

  m.def(
      "split_budget", [](double eps, double delta_bar) { return qre::split_budget(eps, delta_bar); },
      py::arg("epsilon") = qre::kReferenceEpsilon, py::arg("delta_bar") = qre::kReferenceDeltaBar);
  m.def("compute_shots", &qre::compute_shots, py::arg("gamma"), py::arg("p_gs"));
  m.def("compute_shot_hw_tolerance", &qre::compute_shot_hw_tolerance, py::arg("shots"),
        py::arg("p_hw"));
  m.def("assign_parameters", &qre::assign_parameters, py::arg("instance"), py::arg("budget"),
        py::arg("variant") = qre::NormVariant::original);

  py::class_<qre::LogicalResourceEstimate>(m, "LogicalResourceEstimate")
      .def_readonly("molecule_id", &qre::LogicalResourceEstimate::molecule_id)
      .def_readonly("n_orbitals", &qre::LogicalResourceEstimate::n_orbitals)
      .def_readonly("overlap_gamma", &qre::LogicalResourceEstimate::overlap_gamma)
      .def_readonly("toffoli_per_shot", &qre::LogicalResourceEstimate::toffoli_per_shot)
      .def_readonly("logical_qubits", &qre::LogicalResourceEstimate::logical_qubits)
      .def_readonly("shots", &qre::LogicalResourceEstimate::shots)
      .def_readonly("shot_hw_tolerance", &qre::LogicalResourceEstimate::shot_hw_tolerance)
      .def_readonly("parameters", &qre::LogicalResourceEstimate::parameters);

  m.def(
      "estimate_logical_catalog",
      [](const std::vector<qre::HamiltonianInstance>& catalog, const qre::ErrorBudget& budget,
         qre::NormVariant variant) { return qre::estimate_catalog(catalog, budget, variant).rows; },
      py::arg("catalog"), py::arg("budget"), py::arg("variant") = qre::NormVariant::original,
      "Calibrate on the catalog's anchors and estimate every anchored instance.");

  py::class_<qre::PhysicalArchitecture>(m, "PhysicalArchitecture")
      .def_readonly("cycle_time_s", &qre::PhysicalArchitecture::cycle_time_s)
      .def_readonly("phys_error_rate", &qre::PhysicalArchitecture::phys_error_rate)
      .def_readonly("n_factories", &qre::PhysicalArchitecture::n_factories)
      .def_readonly("max_distance", &qre::PhysicalArchitecture::max_distance);
  py::class_<qre::FactorySpec>(m, "FactorySpec")
      .def_readonly("name", &qre::FactorySpec::name)
      .def_readonly("physical_qubits", &qre::FactorySpec::physical_qubits)
      .def_readonly("cycles_per_output", &qre::FactorySpec::cycles_per_output)
      .def_readonly("output_error", &qre::FactorySpec::output_error);
  py::class_<qre::ArchitectureConfig>(m, "ArchitectureConfig")
      .def_readonly("architecture", &qre::ArchitectureConfig::architecture)
      .def_readonly("factories", &qre::ArchitectureConfig::factories);
  m.def("load_architecture_config", &qre::load_architecture_config, py::arg("path"));

  py::class_<qre::PhysicalResourceEstimate>(m, "PhysicalResourceEstimate")
      .def_readonly("molecule_id", &qre::PhysicalResourceEstimate::molecule_id)
      .def_readonly("n_orbitals", &qre::PhysicalResourceEstimate::n_orbitals)
      .def_readonly("shots", &qre::PhysicalResourceEstimate::shots)
      .def_readonly("physical_qubits", &qre::PhysicalResourceEstimate::physical_qubits)
      .def_readonly("runtime_hours", &qre::PhysicalResourceEstimate::runtime_hours)
      .def_readonly("code_distance", &qre::PhysicalResourceEstimate::code_distance)
      .def_readonly("factory", &qre::PhysicalResourceEstimate::factory);
  m.def(
      "search_configuration",
      [](const qre::LogicalResourceEstimate& logical, const qre::ArchitectureConfig& cfg) {
        return qre::search_configuration(logical, cfg.architecture, cfg.factories);
      },
      py::arg("logical"), py::arg("config"));

  py::class_<qre::DmrgPoint>(m, "DmrgPoint")
      .def(py::init([](std::int64_t d, double e, double w, std::optional<double> h) {
             return qre::DmrgPoint{d, e, w, h};
           }),
           py::arg("bond_dimension"), py::arg("energy"), py::arg("truncated_weight"),
           py::arg("cpu_hours") = py::none())
      .def_readonly("bond_dimension", &qre::DmrgPoint::bond_dimension)
      .def_readonly("energy", &qre::DmrgPoint::energy)
      .def_readonly("truncated_weight", &qre::DmrgPoint::truncated_weight)
      .def_readonly("cpu_hours", &qre::DmrgPoint::cpu_hours);
  py::class_<qre::EnergyFit>(m, "EnergyFit")
      .def_readonly("e_est", &qre::EnergyFit::e_est)
      .def_readonly("slope", &qre::EnergyFit::slope)
      .def_readonly("e_est_ci95", &qre::EnergyFit::e_est_ci95);
  py::class_<qre::BondDimensionFit>(m, "BondDimensionFit")
      .def_readonly("a", &qre::BondDimensionFit::a)
      .def_readonly("b", &qre::BondDimensionFit::b)
      .def_readonly("sigma_a", &qre::BondDimensionFit::sigma_a)
      .def_readonly("sigma_b", &qre::BondDimensionFit::sigma_b)
      .def_readonly("d_est", &qre::BondDimensionFit::d_est)
      .def_readonly("d_min", &qre::BondDimensionFit::d_min)
      .def_readonly("d_max", &qre::BondDimensionFit::d_max)
      .def_readonly("warnings", &qre::BondDimensionFit::warnings);
  m.def(
      "fit_energy_extrapolation",
      [](const std::vector<qre::DmrgPoint>& pts) { return qre::fit_energy_extrapolation(pts); },
      py::arg("points"));
  m.def(
      "fit_bond_dimension",
      [](const std::vector<qre::DmrgPoint>& pts, double e_est, double delta) {
        return qre::fit_bond_dimension(pts, e_est, delta);
      },
      py::arg("points"), py::arg("e_est"), py::arg("delta") = 1e-3);
  m.def(
      "cpu_time_forecast",
      [](const std::vector<qre::DmrgPoint>& pts, double target) {
        return qre::cpu_time_forecast(pts, target);
      },
      py::arg("points"), py::arg("target_d"));

  m.def(
      "classical_cost",
      [](double hours, double rate) {
        qre::CostModel model;
        model.cpu_hour_rate_usd = rate;
        return qre::classical_cost(hours, model);
      },
      py::arg("cpu_hours"), py::arg("rate_usd") = 0.04);
  m.def("quantum_share", &qre::quantum_share, py::arg("quantum_hours"),
        py::arg("classical_cpu_hours"), py::arg("parallel_cpus"));
}
