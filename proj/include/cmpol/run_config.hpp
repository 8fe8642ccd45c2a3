#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmpol/params.hpp"

namespace cmpol {

enum class RunKind { sweep_field, sweep_phase, map_delta_phi, llg_cone, fit, ingest };

std::string to_string(RunKind kind);
RunKind run_kind_from_string(const std::string& name);

/// Inclusive numeric range with a point count; points >= 1, min < max unless
/// points == 1.
struct RangeSpec {
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 0;
};

/// LLG cone sweep controls.
struct LlgSettings {
  double h_rel = 1e-4;          // drive amplitude as a fraction of Ms
  double alpha = 0.0;           // Gilbert damping override; 0 keeps the magnet's
  double drive_f_ghz = 0.0;     // probe frequency; 0 means drive at omega0
  double decay_spans = 12.0;    // integration length in units of 1/(alpha*omega)
  int steps_per_period = 64;
};

/// Fully resolved run description: parameters, drive, grids, outputs. One
/// sweep kind per run.
struct RunConfig {
  int version = 1;
  RunKind kind = RunKind::sweep_field;
  SystemParams params = paper_system();
  DriveState drive{0.0, 0.0, +1, 0.23, 1e-3};
  RangeSpec field_mT;
  RangeSpec freq_GHz;
  RangeSpec phi_deg;
  RangeSpec delta_range;
  LlgSettings llg;
  std::string input_path;
  std::string out_csv;
  std::string out_pgm;
  bool with_phase = false;
  bool overlay_perturbation = false;
  int quadrature_order = 32;
};

/// Parse a config file (JSON, versioned). Unknown version, missing required
/// fields, or malformed ranges throw ConfigError with the offending field.
RunConfig load_config(const std::string& path);
RunConfig parse_config_json(const std::string& json_text, const std::string& origin);

/// Canonical JSON echo of a resolved config; identical configs serialise
/// byte-identically, and the echo is embedded in every output file.
std::string echo_config(const RunConfig& config);

/// Execute the run, writing the configured outputs. Returns 0 on success;
/// errors propagate as exceptions.
int run(const RunConfig& config);

}  // namespace cmpol
