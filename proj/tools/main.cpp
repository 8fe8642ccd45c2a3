// cmpol command-line driver: polarisation-controlled cavity magnon-polariton
// sweeps, LLG cone diagrams, and spectra fitting/ingestion.
//
// Each subcommand mirrors one run kind of the JSON config schema; flags
// override config-file values.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cmpol/constants.hpp"
#include "cmpol/errors.hpp"
#include "cmpol/run_config.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_csv;
  std::string out_pgm;
  std::string input;
  bool with_phase = false;
  bool overlay = false;
  std::optional<double> delta, phi_deg, mu0_H0_mT, probe_power;
  std::optional<int> h0_sign;
  std::optional<double> field_min, field_max;
  std::optional<std::size_t> field_points;
  std::optional<double> freq_min, freq_max;
  std::optional<std::size_t> freq_points;
  std::optional<double> phi_min, phi_max;
  std::optional<std::size_t> phi_points;
  std::optional<double> delta_min, delta_max;
  std::optional<std::size_t> delta_points;
  std::optional<double> llg_h_rel, llg_alpha, llg_drive_f;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("-c,--config", f.config_path, "JSON config file (flags override it)");
  cmd->add_option("--csv", f.out_csv, "output CSV path");
  cmd->add_option("--pgm", f.out_pgm, "quick-look PGM path");
  cmd->add_flag("--phase", f.with_phase, "also write arg(S11)");
  cmd->add_flag("--overlay", f.overlay, "write perturbation branch overlay CSV");
  cmd->add_option("--delta", f.delta, "amplitude ratio in [0,1]");
  cmd->add_option("--phi-deg", f.phi_deg, "relative phase [deg]");
  cmd->add_option("--h0-sign", f.h0_sign, "bias direction +1/-1");
  cmd->add_option("--field-mT", f.mu0_H0_mT, "bias induction [mT]");
  cmd->add_option("--power-W", f.probe_power, "probe power [W]");
}

void apply_overrides(cmpol::RunConfig& c, const CommonFlags& f) {
  using cmpol::DriveState;
  if (!f.out_csv.empty()) c.out_csv = f.out_csv;
  if (!f.out_pgm.empty()) c.out_pgm = f.out_pgm;
  if (!f.input.empty()) c.input_path = f.input;
  if (f.with_phase) c.with_phase = true;
  if (f.overlay) c.overlay_perturbation = true;
  c.drive = DriveState(f.delta.value_or(c.drive.delta),
                       f.phi_deg ? *f.phi_deg * cmpol::pi / 180.0 : c.drive.phi,
                       f.h0_sign.value_or(c.drive.h0_sign),
                       f.mu0_H0_mT ? *f.mu0_H0_mT * 1e-3 : c.drive.mu0_H0,
                       f.probe_power.value_or(c.drive.probe_power));
  auto range = [](cmpol::RangeSpec& r, const std::optional<double>& lo,
                  const std::optional<double>& hi, const std::optional<std::size_t>& n) {
    if (lo) r.min = *lo;
    if (hi) r.max = *hi;
    if (n) r.points = *n;
  };
  range(c.field_mT, f.field_min, f.field_max, f.field_points);
  range(c.freq_GHz, f.freq_min, f.freq_max, f.freq_points);
  range(c.phi_deg, f.phi_min, f.phi_max, f.phi_points);
  range(c.delta_range, f.delta_min, f.delta_max, f.delta_points);
  if (f.llg_h_rel) c.llg.h_rel = *f.llg_h_rel;
  if (f.llg_alpha) c.llg.alpha = *f.llg_alpha;
  if (f.llg_drive_f) c.llg.drive_f_ghz = *f.llg_drive_f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cavity magnon-polariton polarisation toolkit"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* cmd;
    CommonFlags flags;
    cmpol::RunKind kind;
  };
  std::vector<Sub> subs;
  subs.reserve(8);  // CLI11 keeps references into flags; no reallocation allowed
  auto add = [&](const char* name, const char* desc, cmpol::RunKind kind) -> Sub& {
    subs.push_back(Sub{app.add_subcommand(name, desc), {}, kind});
    add_common(subs.back().cmd, subs.back().flags);
    return subs.back();
  };

  {
    Sub& s = add("sweep-field", "|S11| over (bias field, probe frequency)",
                 cmpol::RunKind::sweep_field);
    s.cmd->add_option("--field-min-mT", s.flags.field_min);
    s.cmd->add_option("--field-max-mT", s.flags.field_max);
    s.cmd->add_option("--field-points", s.flags.field_points);
    s.cmd->add_option("--freq-min-GHz", s.flags.freq_min);
    s.cmd->add_option("--freq-max-GHz", s.flags.freq_max);
    s.cmd->add_option("--freq-points", s.flags.freq_points);
  }
  {
    Sub& s = add("sweep-phase", "|S11| over (relative phase, probe frequency) at resonance",
                 cmpol::RunKind::sweep_phase);
    s.cmd->add_option("--phi-min-deg", s.flags.phi_min);
    s.cmd->add_option("--phi-max-deg", s.flags.phi_max);
    s.cmd->add_option("--phi-points", s.flags.phi_points);
    s.cmd->add_option("--freq-min-GHz", s.flags.freq_min);
    s.cmd->add_option("--freq-max-GHz", s.flags.freq_max);
    s.cmd->add_option("--freq-points", s.flags.freq_points);
  }
  {
    Sub& s = add("map-delta-phi", "Rabi splitting over (delta, phi)",
                 cmpol::RunKind::map_delta_phi);
    s.cmd->add_option("--delta-min", s.flags.delta_min);
    s.cmd->add_option("--delta-max", s.flags.delta_max);
    s.cmd->add_option("--delta-points", s.flags.delta_points);
    s.cmd->add_option("--phi-min-deg", s.flags.phi_min);
    s.cmd->add_option("--phi-max-deg", s.flags.phi_max);
    s.cmd->add_option("--phi-points", s.flags.phi_points);
  }
  {
    Sub& s = add("llg-cone", "steady-state precession cones over a phi sweep",
                 cmpol::RunKind::llg_cone);
    s.cmd->add_option("--phi-min-deg", s.flags.phi_min);
    s.cmd->add_option("--phi-max-deg", s.flags.phi_max);
    s.cmd->add_option("--phi-points", s.flags.phi_points);
    s.cmd->add_option("--h-rel", s.flags.llg_h_rel, "drive amplitude / Ms");
    s.cmd->add_option("--alpha", s.flags.llg_alpha, "Gilbert damping override");
    s.cmd->add_option("--drive-f-GHz", s.flags.llg_drive_f, "drive frequency (0 = omega0)");
  }
  {
    Sub& s = add("fit", "Lorentzian dip fits of an ingested spectra file", cmpol::RunKind::fit);
    s.cmd->add_option("-i,--input", s.flags.input, "spectra CSV to fit")->required(false);
  }
  {
    Sub& s = add("ingest", "parse and summarise a spectra file", cmpol::RunKind::ingest);
    s.cmd->add_option("-i,--input", s.flags.input, "spectra CSV to read")->required(false);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (Sub& s : subs) {
      if (!s.cmd->parsed()) continue;
      cmpol::RunConfig config;
      if (!s.flags.config_path.empty()) config = cmpol::load_config(s.flags.config_path);
      config.kind = s.kind;
      apply_overrides(config, s.flags);
      return cmpol::run(config);
    }
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const cmpol::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
