#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsurv/cell_grid.hpp"
#include "qsurv/measurement.hpp"
#include "qsurv/nondemolition.hpp"
#include "qsurv/position_survival.hpp"
#include "qsurv/scattering.hpp"
#include "qsurv/special_functions.hpp"
#include "qsurv/survival.hpp"

namespace py = pybind11;
using namespace qsurv;

PYBIND11_MODULE(qsurv, m) {
  m.doc() = "Projective quantum measurement toolkit with survival-effect analysis";

  // --- measurement core ------------------------------------------------
  py::class_<SpectralObservable>(m, "SpectralObservable")
      .def(py::init<std::vector<double>, std::vector<ComplexMatrix>, double>(),
           py::arg("eigenvalues"), py::arg("blocks"), py::arg("tol") = kDefaultTol)
      .def_static("nondegenerate", &SpectralObservable::nondegenerate, py::arg("eigenvalues"),
                  py::arg("eigenvectors"), py::arg("tol") = kDefaultTol)
      .def_property_readonly("dim", &SpectralObservable::dim)
      .def_property_readonly("block_count", &SpectralObservable::block_count)
      .def("eigenvalue", &SpectralObservable::eigenvalue)
      .def("degeneracy", &SpectralObservable::degeneracy)
      .def("block", &SpectralObservable::block)
      .def("matrix", &SpectralObservable::matrix);

  py::class_<DegenerateRotation>(m, "DegenerateRotation")
      .def(py::init<std::vector<ComplexMatrix>, double>(), py::arg("rotations"),
           py::arg("tol") = kDefaultTol)
      .def_static("identity", &DegenerateRotation::identity)
      .def("rotation", &DegenerateRotation::rotation);

  py::class_<PostMeasurement>(m, "PostMeasurement")
      .def_readonly("probability", &PostMeasurement::probability)
      .def_readonly("state", &PostMeasurement::state);

  m.def("build_projector", &build_projector, py::arg("obs"), py::arg("alpha"));
  m.def("measurement_probabilities", &measurement_probabilities, py::arg("rho"), py::arg("obs"),
        py::arg("tol") = kDefaultTol);
  m.def("detection_operator", &detection_operator, py::arg("obs"), py::arg("rot"),
        py::arg("alpha"));
  m.def("post_measurement_state", &post_measurement_state, py::arg("rho"), py::arg("obs"),
        py::arg("rot"), py::arg("alpha"), py::arg("u_q"), py::arg("tol") = kDefaultTol);
  m.def("ensemble_after_measurement", &ensemble_after_measurement, py::arg("rho"), py::arg("obs"),
        py::arg("rot"), py::arg("u_q"), py::arg("tol") = kDefaultTol);
  m.def("are_compatible", &are_compatible, py::arg("a"), py::arg("b"), py::arg("tol"));
  m.def("evolve_density", &evolve_density, py::arg("rho"), py::arg("h_q"), py::arg("dt"),
        py::arg("hbar"), py::arg("tol") = kDefaultTol);

  // --- nondemolition -----------------------------------------------------
  py::class_<VBasis>(m, "VBasis")
      .def(py::init<SpectralObservable, std::vector<ComplexVector>>(), py::arg("parent"),
           py::arg("coefficients"))
      .def_property_readonly("count", &VBasis::count)
      .def("vector", &VBasis::vector)
      .def("rotated_vector", &VBasis::rotated_vector);

  py::class_<VState>(m, "VState")
      .def(py::init<std::vector<double>, ComplexMatrix, double>(), py::arg("weights"),
           py::arg("amplitudes"), py::arg("tol") = 1e-6);

  m.def("v_density", &v_density, py::arg("state"), py::arg("basis"));
  m.def("v_probabilities", &v_probabilities, py::arg("rho_v"), py::arg("basis"),
        py::arg("tol") = kDefaultTol);
  m.def("v_post_state", &v_post_state, py::arg("basis"), py::arg("rot"), py::arg("alpha"),
        py::arg("u_q"));

  // --- survival ------------------------------------------------------------
  py::class_<SurvivalDistribution>(m, "SurvivalDistribution")
      .def_static("exponential", &SurvivalDistribution::exponential, py::arg("tau"),
                  py::arg("tau0") = std::numeric_limits<double>::infinity())
      .def_static("gamma", &SurvivalDistribution::gamma, py::arg("tau"), py::arg("s"),
                  py::arg("tau0") = std::numeric_limits<double>::infinity())
      .def_property_readonly("tau", &SurvivalDistribution::tau)
      .def_property_readonly("shape", &SurvivalDistribution::shape)
      .def_property_readonly("cutoff", &SurvivalDistribution::cutoff)
      .def_property_readonly("epsilon_hat", &SurvivalDistribution::epsilon_hat);

  m.def("survival_density", &survival_density, py::arg("dist"), py::arg("t"));
  m.def("survival_tail_mass", &survival_tail_mass, py::arg("dist"), py::arg("t"));
  m.def("q_factor", &q_factor, py::arg("dist"), py::arg("omega"));
  m.def("reduced_density_closed", &reduced_density_closed, py::arg("rho"), py::arg("h_q"),
        py::arg("dist"), py::arg("hbar"), py::arg("tol") = kDefaultTol);
  m.def("reduced_density_quadrature", &reduced_density_quadrature, py::arg("rho"), py::arg("h_q"),
        py::arg("dist"), py::arg("hbar"), py::arg("n_steps"), py::arg("refine_tol") = 0.0,
        py::arg("tol") = kDefaultTol);
  m.def("reduced_density_first_order", &reduced_density_first_order, py::arg("rho"),
        py::arg("h_q"), py::arg("dist"), py::arg("hbar"), py::arg("tol") = kDefaultTol);
  m.def("nonideal_probability", &nonideal_probability, py::arg("rho"), py::arg("h_q"),
        py::arg("dist"), py::arg("obs"), py::arg("hbar"), py::arg("tol") = kDefaultTol);

  // --- cell grids ---------------------------------------------------------
  py::enum_<GridKind>(m, "GridKind")
      .value("momentum", GridKind::momentum)
      .value("position", GridKind::position);

  py::class_<CellGrid>(m, "CellGrid")
      .def(py::init<GridKind, double, int, int, double>(), py::arg("kind"), py::arg("epsilon"),
           py::arg("dims"), py::arg("half_extent"), py::arg("edge") = 0.0)
      .def_static("covering", &CellGrid::covering, py::arg("kind"), py::arg("epsilon"),
                  py::arg("halfwidth"), py::arg("dims") = 1)
      .def_property_readonly("epsilon", &CellGrid::epsilon)
      .def_property_readonly("dims", &CellGrid::dims)
      .def_property_readonly("half_extent", &CellGrid::half_extent)
      .def_property_readonly("cell_count", &CellGrid::cell_count)
      .def("center", &CellGrid::center);

  m.def(
      "cell_amplitude",
      [](const Wavefunction1D& psi, const CellGrid& grid, int n) {
        return cell_amplitude(psi, grid, n);
      },
      py::arg("psi"), py::arg("grid"), py::arg("n"));
  m.def("gram_deviation", &gram_deviation, py::arg("grid"));
  m.def(
      "completeness_residual",
      [](const Wavefunction1D& psi, const CellGrid& grid) {
        return completeness_residual(psi, grid);
      },
      py::arg("psi"), py::arg("grid"));

  // --- position survival ----------------------------------------------------
  py::class_<GaussianPacket>(m, "GaussianPacket")
      .def(py::init([](double a, double p0, double hbar, double mass) {
             GaussianPacket pk{a, p0, hbar, mass};
             pk.validate();
             return pk;
           }),
           py::arg("a") = 1.0, py::arg("p0") = 1.0, py::arg("hbar") = 1.0, py::arg("m") = 1.0)
      .def_readonly("a", &GaussianPacket::a)
      .def_readonly("p0", &GaussianPacket::p0)
      .def_readonly("hbar", &GaussianPacket::hbar)
      .def_readonly("m", &GaussianPacket::m)
      .def_property_readonly("width_b", &GaussianPacket::width_b)
      .def("position_wavefunction", &GaussianPacket::position_wavefunction)
      .def("momentum_wavefunction", &GaussianPacket::momentum_wavefunction);

  m.def("drift_length", &drift_length, py::arg("packet"), py::arg("dist"));
  m.def("survival_epsilon0", &survival_epsilon0, py::arg("packet"), py::arg("dist"));
  m.def("packet_position_density_ideal", &packet_position_density_ideal, py::arg("packet"),
        py::arg("x"));
  m.def("packet_momentum_density", &packet_momentum_density, py::arg("packet"), py::arg("p"));
  m.def(
      "survival_position_first_order",
      [](const GaussianPacket& pk, const SurvivalDistribution& dist, double x) {
        return survival_position_first_order(pk, dist, x);
      },
      py::arg("packet"), py::arg("dist"), py::arg("x"));
  m.def("survival_position_gaussian", &survival_position_gaussian, py::arg("packet"),
        py::arg("dist"), py::arg("x"));
  m.def("survival_position_exact", &survival_position_exact, py::arg("packet"), py::arg("dist"),
        py::arg("grid"), py::arg("x"));

  py::class_<UncertaintyProduct>(m, "UncertaintyProduct")
      .def_readonly("dx", &UncertaintyProduct::dx)
      .def_readonly("dp", &UncertaintyProduct::dp)
      .def_readonly("product", &UncertaintyProduct::product)
      .def_readonly("mean_x", &UncertaintyProduct::mean_x);

  m.def("uncertainty_product", &uncertainty_product, py::arg("packet"), py::arg("dist"),
        py::arg("use_renormalized"));
  m.def("dimensionless_position_density", &dimensionless_position_density, py::arg("eps0"),
        py::arg("xi"));
  m.def("upper_incomplete_gamma", &upper_incomplete_gamma, py::arg("lam"), py::arg("sigma"));

  py::class_<TailMoment>(m, "TailMoment")
      .def_readonly("exact", &TailMoment::exact)
      .def_readonly("asymptotic", &TailMoment::asymptotic);

  m.def("negative_tail_moment", &negative_tail_moment, py::arg("packet"), py::arg("dist"),
        py::arg("n"));
  m.def("renormalization_constant", &renormalization_constant, py::arg("packet"),
        py::arg("dist"));

  // --- scattering -----------------------------------------------------------
  py::class_<ScatteringModel>(m, "ScatteringModel")
      .def(py::init<ComplexMatrix, ComplexMatrix, double, double, double>(), py::arg("h0"),
           py::arg("hi"), py::arg("nu"), py::arg("hbar") = 1.0, py::arg("tol") = kDefaultTol)
      .def_static("default_nu", &ScatteringModel::default_nu, py::arg("h0"), py::arg("hi"),
                  py::arg("hbar") = 1.0)
      .def_property_readonly("dim", &ScatteringModel::dim)
      .def_property_readonly("nu", &ScatteringModel::nu)
      .def("free_energy", &ScatteringModel::free_energy);

  py::class_<WaveOperators>(m, "WaveOperators")
      .def_readonly("omega_plus", &WaveOperators::omega_plus)
      .def_readonly("omega_minus", &WaveOperators::omega_minus)
      .def_readonly("s_matrix", &WaveOperators::s_matrix)
      .def_readonly("isometry_defect_plus", &WaveOperators::isometry_defect_plus)
      .def_readonly("isometry_defect_minus", &WaveOperators::isometry_defect_minus)
      .def_readonly("unitarity_defect", &WaveOperators::unitarity_defect);

  py::class_<TransitionAmplitudes>(m, "TransitionAmplitudes")
      .def_readonly("f", &TransitionAmplitudes::f)
      .def_readonly("norm_constant", &TransitionAmplitudes::norm_constant)
      .def_readonly("norm_via_t_matrix", &TransitionAmplitudes::norm_via_t_matrix);

  py::class_<DoubleLimitEntry>(m, "DoubleLimitEntry")
      .def_readonly("epsilon", &DoubleLimitEntry::epsilon)
      .def_readonly("nu", &DoubleLimitEntry::nu)
      .def_readonly("lam", &DoubleLimitEntry::lambda)
      .def_readonly("n_lambda", &DoubleLimitEntry::n_lambda);

  m.def("scattered_state", &scattered_state, py::arg("model"), py::arg("lam"));
  m.def("lippmann_schwinger_iterate", &lippmann_schwinger_iterate, py::arg("model"),
        py::arg("lam"), py::arg("max_iter"), py::arg("tol"));
  m.def("wave_operators_and_s_matrix", &wave_operators_and_s_matrix, py::arg("model"));
  m.def("conditional_propagator", &conditional_propagator, py::arg("model"), py::arg("t_prime"),
        py::arg("t0"));
  m.def("transition_amplitudes", &transition_amplitudes, py::arg("model"), py::arg("lam"),
        py::arg("t"));
  m.def("double_limit_probe", &double_limit_probe, py::arg("h0"), py::arg("v"),
        py::arg("eps_list"), py::arg("nu_list"), py::arg("hbar") = 1.0);
}
