// Python bindings for the cmpol core: parameter presets, susceptibilities,
// cavity fields and energies, both coupling models, sweep maps, the LLG
// integrator, and the fitting helpers.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cmpol/cavity_fields.hpp"
#include "cmpol/constants.hpp"
#include "cmpol/errors.hpp"
#include "cmpol/fitting.hpp"
#include "cmpol/llg.hpp"
#include "cmpol/perturbation.hpp"
#include "cmpol/quantum_io.hpp"
#include "cmpol/run_config.hpp"
#include "cmpol/spectra_io.hpp"
#include "cmpol/susceptibility.hpp"

namespace py = pybind11;
using namespace cmpol;

PYBIND11_MODULE(_cmpol, m) {
  m.doc() = "polarisation-controlled cavity magnon-polariton toolkit";

  m.attr("mu0") = mu0_si;
  m.attr("hbar") = hbar_si;
  m.def("omega_from_ghz", &omega_from_ghz);
  m.def("omega_from_mhz", &omega_from_mhz);
  m.def("ghz_from_omega", &ghz_from_omega);
  m.def("mhz_from_omega", &mhz_from_omega);

  py::register_exception<Error>(m, "CmpolError");

  py::class_<MagnetParams>(m, "MagnetParams")
      .def(py::init<double, double, double, double, double, double>(), py::arg("mu0_Ms"),
           py::arg("gamma"), py::arg("rho"), py::arg("sample_diameter"), py::arg("alpha"),
           py::arg("eta_kittel"))
      .def_readonly("mu0_Ms", &MagnetParams::mu0_Ms)
      .def_readonly("gamma", &MagnetParams::gamma)
      .def_readonly("rho", &MagnetParams::rho)
      .def_readonly("sample_diameter", &MagnetParams::sample_diameter)
      .def_readonly("alpha", &MagnetParams::alpha)
      .def_readonly("eta_kittel", &MagnetParams::eta_kittel)
      .def("omega_m", &MagnetParams::omega_m)
      .def("gamma_angular", &MagnetParams::gamma_angular)
      .def("sample_volume", &MagnetParams::sample_volume)
      .def("spin_count", &MagnetParams::spin_count)
      .def("saturation_magnetisation", &MagnetParams::saturation_magnetisation);

  py::class_<ModeIndex>(m, "ModeIndex")
      .def(py::init<int, int>(), py::arg("m"), py::arg("n"))
      .def_readonly("m", &ModeIndex::m)
      .def_readonly("n", &ModeIndex::n);

  py::class_<CavityParams>(m, "CavityParams")
      .def(py::init<double, double, double, double, double, ModeIndex, ModeIndex>(),
           py::arg("a"), py::arg("b"), py::arg("c"), py::arg("omega_c"), py::arg("kappa"),
           py::arg("mode1") = ModeIndex{1, 2}, py::arg("mode2") = ModeIndex{2, 1})
      .def_readonly("a", &CavityParams::a)
      .def_readonly("b", &CavityParams::b)
      .def_readonly("c", &CavityParams::c)
      .def_readonly("omega_c", &CavityParams::omega_c)
      .def_readonly("kappa", &CavityParams::kappa)
      .def("volume", &CavityParams::volume)
      .def("centre", &CavityParams::centre);

  py::class_<DriveState>(m, "DriveState")
      .def(py::init<double, double, int, double, double>(), py::arg("delta"), py::arg("phi"),
           py::arg("h0_sign") = +1, py::arg("mu0_H0") = 0.0, py::arg("probe_power") = 1e-3)
      .def_readonly("delta", &DriveState::delta)
      .def_readonly("phi", &DriveState::phi)
      .def_readonly("h0_sign", &DriveState::h0_sign)
      .def_readonly("mu0_H0", &DriveState::mu0_H0)
      .def_readonly("probe_power", &DriveState::probe_power)
      .def("chirality_sign", &DriveState::chirality_sign);

  py::class_<CouplingParams>(m, "CouplingParams")
      .def(py::init<double, double>(), py::arg("g"), py::arg("eta_overlap") = 1.0)
      .def_readonly("g", &CouplingParams::g)
      .def_readonly("eta_overlap", &CouplingParams::eta_overlap);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<MagnetParams, CavityParams, CouplingParams>(), py::arg("magnet"),
           py::arg("cavity"), py::arg("coupling"))
      .def_readonly("magnet", &SystemParams::magnet)
      .def_readonly("cavity", &SystemParams::cavity)
      .def_readonly("coupling", &SystemParams::coupling);

  m.def("yig_sphere_preset", &yig_sphere_preset);
  m.def("square_cavity_preset", &square_cavity_preset);
  m.def("coupling_preset", &coupling_preset);
  m.def("paper_system", &paper_system);

  m.def("kittel_frequency", &kittel_frequency, py::arg("magnet"), py::arg("drive"));
  m.def("field_for_resonance", &field_for_resonance, py::arg("magnet"),
        py::arg("omega_target"));
  m.def("wrap_phase", &wrap_phase);

  py::class_<ChiTensor>(m, "ChiTensor")
      .def_readonly("chi_a", &ChiTensor::chi_a)
      .def_readonly("chi_b", &ChiTensor::chi_b)
      .def("apply", &ChiTensor::apply);
  m.def("chi_tensor", &chi_tensor, py::arg("magnet"), py::arg("omega0"), py::arg("omega"),
        py::arg("h0_sign"), py::arg("damped"));
  m.def("chi_circular", &chi_circular, py::arg("magnet"), py::arg("omega0"),
        py::arg("omega"), py::arg("handedness"), py::arg("h0_sign"), py::arg("damped"));
  m.def("magnetisation_response", &magnetisation_response);

  py::enum_<EllipseHandedness>(m, "EllipseHandedness")
      .value("left", EllipseHandedness::left)
      .value("right", EllipseHandedness::right)
      .value("linear", EllipseHandedness::linear);
  py::class_<PolarisationEllipse>(m, "PolarisationEllipse")
      .def_readonly("axial_ratio", &PolarisationEllipse::axial_ratio)
      .def_readonly("handedness", &PolarisationEllipse::handedness)
      .def_readonly("major_axis_angle", &PolarisationEllipse::major_axis_angle);

  m.def("te_mode_field", &te_mode_field, py::arg("cavity"), py::arg("mode"), py::arg("x"),
        py::arg("y"), py::arg("amplitude") = 1.0);
  m.def("superposed_field", &superposed_field, py::arg("cavity"), py::arg("drive"),
        py::arg("x"), py::arg("y"), py::arg("amplitude") = 1.0);
  m.def("polarisation_at_point", &polarisation_at_point);
  m.def("polarisation_of", &polarisation_of);
  m.def("polarisation_factor", &polarisation_factor);
  m.def("cavity_energy_analytic", &cavity_energy_analytic, py::arg("cavity"),
        py::arg("drive"), py::arg("amplitude") = 1.0);
  m.def("cavity_energy_numeric", &cavity_energy_numeric, py::arg("cavity"),
        py::arg("drive"), py::arg("quadrature_order"), py::arg("amplitude") = 1.0);
  m.def("sample_energy", &sample_energy, py::arg("cavity"), py::arg("drive"),
        py::arg("magnet"), py::arg("sample_position"), py::arg("amplitude") = 1.0,
        py::arg("sphere_quadrature_order") = 0);
  m.def("sample_energy_centre", &sample_energy_centre, py::arg("cavity"), py::arg("drive"),
        py::arg("magnet"), py::arg("amplitude") = 1.0);
  m.def("wp_over_wc", &wp_over_wc);

  py::class_<HybridBranches>(m, "HybridBranches")
      .def_readonly("omega_a", &HybridBranches::omega_a)
      .def_readonly("omega_b", &HybridBranches::omega_b)
      .def("gap", &HybridBranches::gap);
  m.def("detuning_residual", &detuning_residual);
  m.def("hybrid_eigenfrequencies", &hybrid_eigenfrequencies);
  m.def("rabi_splitting_pert", &rabi_splitting_pert);
  m.def("hybrid_roots_bisection", &hybrid_roots_bisection);

  m.def("effective_coupling", &effective_coupling, py::arg("coupling"), py::arg("drive"));
  m.def("bare_g_first_principles", &bare_g_first_principles);
  m.def("s11", &s11, py::arg("omega"), py::arg("omega_c"), py::arg("omega0"),
        py::arg("kappa"), py::arg("eta_kittel"), py::arg("g_tilde"));
  m.def("hybrid_eigenvalues_io", &hybrid_eigenvalues_io);
  m.def("steady_state_amplitudes", &steady_state_amplitudes);
  m.def("probe_strength", &probe_strength);

  py::class_<ComplexSpectrum>(m, "ComplexSpectrum")
      .def_readonly("freq", &ComplexSpectrum::freq)
      .def_readonly("s11", &ComplexSpectrum::s11)
      .def_readonly("label", &ComplexSpectrum::label)
      .def("magnitude", &ComplexSpectrum::magnitude)
      .def("phase", &ComplexSpectrum::phase);
  py::class_<SpectralMap>(m, "SpectralMap")
      .def_readonly("axis1_name", &SpectralMap::axis1_name)
      .def_readonly("axis2_name", &SpectralMap::axis2_name)
      .def_readonly("value_name", &SpectralMap::value_name)
      .def_readonly("axis1", &SpectralMap::axis1)
      .def_readonly("axis2", &SpectralMap::axis2)
      .def_readonly("values", &SpectralMap::values)
      .def_readonly("phase", &SpectralMap::phase)
      .def("at", &SpectralMap::at);

  m.def("linear_grid", &linear_grid);
  m.def("reflection_spectrum", &reflection_spectrum);
  m.def("field_sweep_map", &field_sweep_map, py::arg("params"), py::arg("drive"),
        py::arg("field_grid"), py::arg("freq_grid"), py::arg("with_phase") = false);
  m.def("phase_sweep_map", &phase_sweep_map, py::arg("params"), py::arg("base"),
        py::arg("phi_grid"), py::arg("freq_grid"), py::arg("with_phase") = false);
  m.def("splitting_map", &splitting_map);

  py::enum_<ConeHandedness>(m, "ConeHandedness")
      .value("with_field", ConeHandedness::with_field)
      .value("against_field", ConeHandedness::against_field)
      .value("undefined", ConeHandedness::undefined);
  py::class_<PrecessionTrajectory>(m, "PrecessionTrajectory")
      .def_readonly("times", &PrecessionTrajectory::times)
      .def_readonly("m", &PrecessionTrajectory::m)
      .def_readonly("drive_record", &PrecessionTrajectory::drive_record)
      .def_readonly("omega_drive", &PrecessionTrajectory::omega_drive)
      .def_readonly("dt", &PrecessionTrajectory::dt);
  py::class_<PrecessionCone>(m, "PrecessionCone")
      .def_readonly("cone_angle", &PrecessionCone::cone_angle)
      .def_readonly("handedness", &PrecessionCone::handedness)
      .def_readonly("ellipticity", &PrecessionCone::ellipticity);
  m.def("integrate_llg", &integrate_llg, py::arg("magnet"), py::arg("drive"),
        py::arg("h_amplitude"), py::arg("omega_drive"), py::arg("t_end"), py::arg("dt"),
        py::arg("store_every") = 1);
  m.def("steady_state_cone", &steady_state_cone, py::arg("trajectory"),
        py::arg("settle_fraction"));
  m.def("transverse_response", &transverse_response, py::arg("trajectory"),
        py::arg("settle_fraction"), py::arg("s"));

  py::class_<LorentzianFit>(m, "LorentzianFit")
      .def_readonly("center", &LorentzianFit::center)
      .def_readonly("hwhm", &LorentzianFit::hwhm)
      .def_readonly("depth", &LorentzianFit::depth)
      .def_readonly("baseline", &LorentzianFit::baseline)
      .def_readonly("residual_norm", &LorentzianFit::residual_norm)
      .def_readonly("iterations", &LorentzianFit::iterations)
      .def("eval", &LorentzianFit::eval);
  m.def(
      "fit_lorentzian",
      [](const std::vector<double>& freq, const std::vector<double>& mag) {
        return fit_lorentzian(std::span<const double>(freq), std::span<const double>(mag));
      },
      py::arg("freq"), py::arg("mag"));
  m.def("linewidth_to_eta", &linewidth_to_eta);
  m.def(
      "find_dips",
      [](const std::vector<double>& freq, const std::vector<double>& mag, double floor) {
        return find_dips(std::span<const double>(freq), std::span<const double>(mag), floor);
      },
      py::arg("freq"), py::arg("mag"), py::arg("prominence_floor"));
  py::class_<SplittingResult>(m, "SplittingResult")
      .def_readonly("resolved", &SplittingResult::resolved)
      .def_readonly("delta_omega", &SplittingResult::delta_omega)
      .def_readonly("dip_freqs", &SplittingResult::dip_freqs);
  m.def("extract_splitting", &extract_splitting, py::arg("params"), py::arg("drive"),
        py::arg("half_span") = omega_from_mhz(15.0),
        py::arg("resolution") = omega_from_mhz(1e-3));
  m.def("photon_number", &photon_number, py::arg("power_in"), py::arg("omega_c"),
        py::arg("Q_i"), py::arg("Q_c"));

  m.def("ingest_spectra", &ingest_spectra, py::arg("path"), py::arg("format") = "csv");
  m.def(
      "run_config",
      [](const std::string& path) { return run(load_config(path)); },
      py::arg("path"), "execute a JSON run configuration");
}
