#include "cmpol/run_config.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "cmpol/cavity_fields.hpp"
#include "cmpol/errors.hpp"
#include "cmpol/fitting.hpp"
#include "cmpol/llg.hpp"
#include "cmpol/perturbation.hpp"
#include "cmpol/quantum_io.hpp"
#include "cmpol/spectra_io.hpp"

namespace cmpol {

using nlohmann::json;

std::string to_string(RunKind kind) {
  switch (kind) {
    case RunKind::sweep_field: return "sweep-field";
    case RunKind::sweep_phase: return "sweep-phase";
    case RunKind::map_delta_phi: return "map-delta-phi";
    case RunKind::llg_cone: return "llg-cone";
    case RunKind::fit: return "fit";
    case RunKind::ingest: return "ingest";
  }
  return "?";
}

RunKind run_kind_from_string(const std::string& name) {
  if (name == "sweep-field") return RunKind::sweep_field;
  if (name == "sweep-phase") return RunKind::sweep_phase;
  if (name == "map-delta-phi") return RunKind::map_delta_phi;
  if (name == "llg-cone") return RunKind::llg_cone;
  if (name == "fit") return RunKind::fit;
  if (name == "ingest") return RunKind::ingest;
  throw ConfigError("unknown run kind '" + name + "'");
}

namespace {

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

RangeSpec get_range(const json& j, const char* key, RangeSpec fallback) {
  if (!j.contains(key)) return fallback;
  const json& r = j.at(key);
  if (!r.is_object()) throw ConfigError(std::string("range '") + key + "' must be an object");
  RangeSpec out;
  out.min = get_num(r, "min", 0.0);
  out.max = get_num(r, "max", 0.0);
  if (!r.contains("points") || !r.at("points").is_number_unsigned())
    throw ConfigError(std::string("range '") + key + "' needs an unsigned 'points'");
  out.points = r.at("points").get<std::size_t>();
  if (out.points == 0) throw ConfigError(std::string("range '") + key + "': empty sweep (points = 0)");
  if (!std::isfinite(out.min) || !std::isfinite(out.max))
    throw ConfigError(std::string("range '") + key + "': bounds must be finite");
  if (out.points == 1) {
    if (out.min != out.max)
      throw ConfigError(std::string("range '") + key + "': single-point range needs min == max");
  } else if (!(out.min < out.max)) {
    throw ConfigError(std::string("range '") + key + "': need min < max");
  }
  return out;
}

std::vector<double> grid_of(const RangeSpec& r, double scale) {
  return linear_grid(r.min * scale, r.max * scale, r.points);
}

void require_range(const RangeSpec& r, const char* key) {
  if (r.points == 0) throw ConfigError(std::string("missing required range '") + key + "'");
}

json range_json(const RangeSpec& r) {
  return json{{"min", r.min}, {"max", r.max}, {"points", r.points}};
}

}  // namespace

RunConfig parse_config_json(const std::string& json_text, const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  try {
    RunConfig c;
    if (!j.contains("version") || !j.at("version").is_number_integer())
      throw ConfigError(origin + ": missing integer 'version'");
    c.version = j.at("version").get<int>();
    if (c.version != 1) throw ConfigError(origin + ": unsupported config version");
    if (!j.contains("run") || !j.at("run").is_string())
      throw ConfigError(origin + ": missing string 'run'");
    c.kind = run_kind_from_string(j.at("run").get<std::string>());

    if (j.contains("preset") && j.at("preset").get<std::string>() != "paper")
      throw ConfigError(origin + ": unknown preset (only 'paper')");
    c.params = paper_system();

    if (j.contains("magnet")) {
      const json& m = j.at("magnet");
      const MagnetParams d = c.params.magnet;
      c.params.magnet = MagnetParams(
          get_num(m, "mu0_Ms_T", d.mu0_Ms), get_num(m, "gamma_GHz_per_T", d.gamma),
          get_num(m, "rho_per_m3", d.rho),
          get_num(m, "diameter_mm", d.sample_diameter * 1e3) * 1e-3,
          get_num(m, "alpha", d.alpha),
          omega_from_mhz(get_num(m, "eta_over_2pi_MHz", mhz_from_omega(d.eta_kittel))));
    }
    if (j.contains("cavity")) {
      const json& v = j.at("cavity");
      const CavityParams d = c.params.cavity;
      c.params.cavity = CavityParams(
          get_num(v, "a_mm", d.a * 1e3) * 1e-3, get_num(v, "b_mm", d.b * 1e3) * 1e-3,
          get_num(v, "c_mm", d.c * 1e3) * 1e-3,
          omega_from_ghz(get_num(v, "f_c_GHz", ghz_from_omega(d.omega_c))),
          omega_from_mhz(get_num(v, "kappa_over_2pi_MHz", mhz_from_omega(d.kappa))),
          d.mode1, d.mode2);
    }
    if (j.contains("coupling")) {
      const json& g = j.at("coupling");
      const CouplingParams d = c.params.coupling;
      c.params.coupling =
          CouplingParams(omega_from_mhz(get_num(g, "g_over_2pi_MHz", mhz_from_omega(d.g))),
                         get_num(g, "eta_overlap", d.eta_overlap));
    }
    if (j.contains("drive")) {
      const json& d = j.at("drive");
      const int sign = static_cast<int>(get_num(d, "h0_sign", c.drive.h0_sign));
      c.drive = DriveState(get_num(d, "delta", c.drive.delta),
                           get_num(d, "phi_deg", c.drive.phi * 180.0 / pi) * pi / 180.0,
                           sign, get_num(d, "mu0_H0_mT", c.drive.mu0_H0 * 1e3) * 1e-3,
                           get_num(d, "probe_power_W", c.drive.probe_power));
    }
    c.field_mT = get_range(j, "field_mT", c.field_mT);
    c.freq_GHz = get_range(j, "freq_GHz", c.freq_GHz);
    c.phi_deg = get_range(j, "phi_deg", c.phi_deg);
    c.delta_range = get_range(j, "delta_range", c.delta_range);
    if (j.contains("llg")) {
      const json& l = j.at("llg");
      c.llg.h_rel = get_num(l, "h_rel", c.llg.h_rel);
      c.llg.alpha = get_num(l, "alpha", c.llg.alpha);
      c.llg.drive_f_ghz = get_num(l, "drive_f_GHz", c.llg.drive_f_ghz);
      c.llg.decay_spans = get_num(l, "decay_spans", c.llg.decay_spans);
      c.llg.steps_per_period = static_cast<int>(get_num(l, "steps_per_period", 64));
    }
    if (j.contains("output")) {
      const json& o = j.at("output");
      if (o.contains("csv")) c.out_csv = o.at("csv").get<std::string>();
      if (o.contains("pgm")) c.out_pgm = o.at("pgm").get<std::string>();
      if (o.contains("phase")) c.with_phase = o.at("phase").get<bool>();
      if (o.contains("overlay")) c.overlay_perturbation = o.at("overlay").get<bool>();
    }
    if (j.contains("input")) c.input_path = j.at("input").get<std::string>();
    c.quadrature_order = static_cast<int>(get_num(j, "quadrature_order", 32));
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_json(ss.str(), path);
}

std::string echo_config(const RunConfig& c) {
  // nlohmann objects serialise with sorted keys, so identical configs echo
  // byte-identically.
  json j;
  j["version"] = c.version;
  j["run"] = to_string(c.kind);
  j["magnet"] = {{"mu0_Ms_T", c.params.magnet.mu0_Ms},
                 {"gamma_GHz_per_T", c.params.magnet.gamma},
                 {"rho_per_m3", c.params.magnet.rho},
                 {"diameter_mm", c.params.magnet.sample_diameter * 1e3},
                 {"alpha", c.params.magnet.alpha},
                 {"eta_over_2pi_MHz", mhz_from_omega(c.params.magnet.eta_kittel)}};
  j["cavity"] = {{"a_mm", c.params.cavity.a * 1e3},
                 {"b_mm", c.params.cavity.b * 1e3},
                 {"c_mm", c.params.cavity.c * 1e3},
                 {"f_c_GHz", ghz_from_omega(c.params.cavity.omega_c)},
                 {"kappa_over_2pi_MHz", mhz_from_omega(c.params.cavity.kappa)}};
  j["coupling"] = {{"g_over_2pi_MHz", mhz_from_omega(c.params.coupling.g)},
                   {"eta_overlap", c.params.coupling.eta_overlap}};
  j["drive"] = {{"delta", c.drive.delta},
                {"phi_deg", c.drive.phi * 180.0 / pi},
                {"h0_sign", c.drive.h0_sign},
                {"sigma", c.drive.chirality_sign()},
                {"mu0_H0_mT", c.drive.mu0_H0 * 1e3},
                {"probe_power_W", c.drive.probe_power}};
  if (c.field_mT.points) j["field_mT"] = range_json(c.field_mT);
  if (c.freq_GHz.points) j["freq_GHz"] = range_json(c.freq_GHz);
  if (c.phi_deg.points) j["phi_deg"] = range_json(c.phi_deg);
  if (c.delta_range.points) j["delta_range"] = range_json(c.delta_range);
  if (c.kind == RunKind::llg_cone)
    j["llg"] = {{"h_rel", c.llg.h_rel},
                {"alpha", c.llg.alpha},
                {"drive_f_GHz", c.llg.drive_f_ghz},
                {"decay_spans", c.llg.decay_spans},
                {"steps_per_period", c.llg.steps_per_period}};
  if (!c.input_path.empty()) j["input"] = c.input_path;
  json out;
  if (!c.out_csv.empty()) out["csv"] = c.out_csv;
  if (!c.out_pgm.empty()) out["pgm"] = c.out_pgm;
  out["phase"] = c.with_phase;
  out["overlay"] = c.overlay_perturbation;
  j["output"] = out;
  j["quadrature_order"] = c.quadrature_order;
  return j.dump();
}

namespace {

void write_outputs(const RunConfig& c, const SpectralMap& map) {
  if (c.out_csv.empty() && c.out_pgm.empty())
    throw ConfigError("no output configured (need output.csv or output.pgm)");
  if (!c.out_csv.empty()) write_map_csv(c.out_csv, map, echo_config(c));
  if (!c.out_pgm.empty()) write_map_pgm(c.out_pgm, map);
}

int run_sweep_field(const RunConfig& c) {
  require_range(c.field_mT, "field_mT");
  require_range(c.freq_GHz, "freq_GHz");
  const auto fields = grid_of(c.field_mT, 1e-3);
  const auto freqs = grid_of(c.freq_GHz, omega_from_ghz(1.0));
  const SpectralMap map = field_sweep_map(c.params, c.drive, fields, freqs, c.with_phase);
  write_outputs(c, map);
  if (c.overlay_perturbation && !c.out_csv.empty()) {
    // Dashed-branch overlay: hybrid eigenfrequencies with the coupling the
    // drive actually produces, expressed through the equivalent Wp/Wc.
    const double g2 = std::norm(effective_coupling(c.params.coupling, c.drive));
    const double r = 2.0 * g2 / (c.params.cavity.omega_c * c.params.magnet.omega_m());
    std::ofstream os(c.out_csv + ".branches.csv");
    if (!os) throw Error("cannot open for writing: " + c.out_csv + ".branches.csv");
    os << "# cmpol perturbation branches v1\n";
    os << "# config: " << echo_config(c) << "\n";
    os << "mu0_H0_T,omega_a_rad_s,omega_b_rad_s\n";
    char buf[128];
    for (double f : fields) {
      DriveState d = c.drive;
      d.mu0_H0 = f;
      const double w0 = kittel_frequency(c.params.magnet, d);
      const HybridBranches br =
          hybrid_eigenfrequencies(c.params.cavity.omega_c, w0, c.params.magnet, r);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f, br.omega_a, br.omega_b);
      os << buf;
    }
  }
  return 0;
}

int run_sweep_phase(const RunConfig& c) {
  require_range(c.phi_deg, "phi_deg");
  require_range(c.freq_GHz, "freq_GHz");
  const auto phis = grid_of(c.phi_deg, pi / 180.0);
  const auto freqs = grid_of(c.freq_GHz, omega_from_ghz(1.0));
  write_outputs(c, phase_sweep_map(c.params, c.drive, phis, freqs, c.with_phase));
  return 0;
}

int run_map_delta_phi(const RunConfig& c) {
  require_range(c.delta_range, "delta_range");
  require_range(c.phi_deg, "phi_deg");
  const auto deltas = grid_of(c.delta_range, 1.0);
  const auto phis = grid_of(c.phi_deg, pi / 180.0);
  write_outputs(c, splitting_map(c.params, c.drive, deltas, phis));
  return 0;
}

int run_llg_cone(const RunConfig& c) {
  require_range(c.phi_deg, "phi_deg");
  if (c.out_csv.empty()) throw ConfigError("llg-cone needs output.csv");
  const auto phis = grid_of(c.phi_deg, pi / 180.0);

  MagnetParams magnet = c.params.magnet;
  if (c.llg.alpha > 0) {
    const double w0 = kittel_frequency(magnet, c.drive);
    magnet = MagnetParams(magnet.mu0_Ms, magnet.gamma, magnet.rho, magnet.sample_diameter,
                          c.llg.alpha, c.llg.alpha * (w0 > 0 ? w0 : magnet.omega_m()));
  }
  const double omega0 = kittel_frequency(magnet, c.drive);
  const double wd = c.llg.drive_f_ghz > 0 ? omega_from_ghz(c.llg.drive_f_ghz) : omega0;
  if (wd <= 0) throw ConfigError("llg-cone: drive frequency is zero (set drive_f_GHz or a bias)");
  const double h_amp = c.llg.h_rel * magnet.saturation_magnetisation();
  const double dt = two_pi / wd / c.llg.steps_per_period;
  const double alpha_eff = magnet.alpha > 0 ? magnet.alpha : 1e-3;
  const double t_end = c.llg.decay_spans / (alpha_eff * wd);

  std::ofstream os(c.out_csv);
  if (!os) throw Error("cannot open for writing: " + c.out_csv);
  os << "# cmpol llg cones v1\n";
  os << "# config: " << echo_config(c) << "\n";
  os << "phi_rad,cone_angle_rad,handedness,ellipticity\n";
  char buf[128];
  for (double phi : phis) {
    DriveState d(c.drive.delta, phi, c.drive.h0_sign, c.drive.mu0_H0, c.drive.probe_power);
    const PrecessionTrajectory traj = integrate_llg(magnet, d, h_amp, wd, t_end, dt, 1);
    const PrecessionCone cone = steady_state_cone(traj, 0.25);
    const int hand = cone.handedness == ConeHandedness::with_field      ? +1
                     : cone.handedness == ConeHandedness::against_field ? -1
                                                                        : 0;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g\n", wrap_phase(phi),
                  cone.cone_angle, hand, cone.ellipticity);
    os << buf;
  }
  return 0;
}

int run_fit(const RunConfig& c) {
  if (c.input_path.empty()) throw ConfigError("fit needs an input file");
  const auto spectra = ingest_spectra(c.input_path);
  std::ostringstream table;
  table << "label,center_GHz,hwhm_over_2pi_MHz,depth,baseline,residual_norm\n";
  char buf[256];
  for (const ComplexSpectrum& spec : spectra) {
    const LorentzianFit fit = fit_lorentzian(spec);
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  spec.label.empty() ? "-" : spec.label.c_str(),
                  ghz_from_omega(fit.center), mhz_from_omega(fit.hwhm), fit.depth,
                  fit.baseline, fit.residual_norm);
    table << buf;
  }
  std::cout << table.str();
  if (!c.out_csv.empty()) {
    std::ofstream os(c.out_csv);
    if (!os) throw Error("cannot open for writing: " + c.out_csv);
    os << "# cmpol lorentzian fits v1\n# config: " << echo_config(c) << "\n" << table.str();
  }
  return 0;
}

int run_ingest(const RunConfig& c) {
  if (c.input_path.empty()) throw ConfigError("ingest needs an input file");
  const auto spectra = ingest_spectra(c.input_path);
  std::cout << "ingested " << spectra.size() << " spectra from " << c.input_path << "\n";
  for (const ComplexSpectrum& spec : spectra)
    std::cout << "  label=" << (spec.label.empty() ? "-" : spec.label)
              << " points=" << spec.freq.size() << " f=[" << ghz_from_omega(spec.freq.front())
              << ", " << ghz_from_omega(spec.freq.back()) << "] GHz\n";
  if (!c.out_csv.empty() && !spectra.empty())
    write_spectrum_csv(c.out_csv, spectra.front(), echo_config(c));
  return 0;
}

}  // namespace

int run(const RunConfig& c) {
  switch (c.kind) {
    case RunKind::sweep_field: return run_sweep_field(c);
    case RunKind::sweep_phase: return run_sweep_phase(c);
    case RunKind::map_delta_phi: return run_map_delta_phi(c);
    case RunKind::llg_cone: return run_llg_cone(c);
    case RunKind::fit: return run_fit(c);
    case RunKind::ingest: return run_ingest(c);
  }
  throw ConfigError("unhandled run kind");
}

}  // namespace cmpol
