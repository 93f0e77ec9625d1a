#ifndef SLOWLIGHT_CONFIG_HPP
#define SLOWLIGHT_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "slowlight/ensemble.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/vapor.hpp"

namespace slowlight {

enum class Runner { scan, pulse, sweep };

struct SweepSpec {
  double b_min = -0.016;  // T
  double b_max = +0.016;
  std::size_t steps = 33;
  bool ensemble_check = false;  // also run the slow ensemble-centroid path
};

struct TcspcSpec {
  bool enabled = false;
  double irf_fwhm = 400e-12;  // s
  double rep_rate = 15e6;     // Hz
  std::uint64_t total_counts = 0;  // 0 = noiseless limit
};

struct RunConfig {
  VaporConfig vapor;
  std::string lines_file;  // empty = built-in default table
  FrequencyGrid grid{-40e9, 80e9 / 65536.0, 65536};
  EnsembleSpec ensemble;
  Geometry geometry = Geometry::qwp_pbs;
  Runner runner = Runner::pulse;
  SweepSpec sweep;
  TcspcSpec tcspc;
  double operating_detuning = 0.0;  // Hz, transmission-window operating point
  double input_angle = 0.0;         // rad, linear input polarization
  std::string output_dir = ".";

  LineTable line_table() const {
    return lines_file.empty() ? default_line_table() : load_line_table(lines_file);
  }
};

namespace detail {

inline double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw config_error(key, "not a number: '" + v + "'");
  }
  if (pos != v.size()) throw config_error(key, "trailing garbage in number: '" + v + "'");
  return d;
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  if (d < 0.0 || d != static_cast<double>(static_cast<std::uint64_t>(d)))
    throw config_error(key, "expected a non-negative integer, got '" + v + "'");
  return static_cast<std::uint64_t>(d);
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw config_error(key, "expected true/false, got '" + v + "'");
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  using detail::parse_bool;
  using detail::parse_double;
  using detail::parse_uint;
  if (key == "vapor.temperature_k") cfg.vapor.temperature = parse_double(key, value);
  else if (key == "vapor.length_m") cfg.vapor.length = parse_double(key, value);
  else if (key == "vapor.b_field_t") cfg.vapor.b_field = parse_double(key, value);
  else if (key == "vapor.line_center_hz") cfg.vapor.line_center_frequency = parse_double(key, value);
  else if (key == "vapor.density_override_m3") {
    if (value == "none") cfg.vapor.density_override.reset();
    else cfg.vapor.density_override = parse_double(key, value);
  }
  else if (key == "vapor.density_a") cfg.vapor.density_model.A = parse_double(key, value);
  else if (key == "vapor.density_b") cfg.vapor.density_model.B = parse_double(key, value);
  else if (key == "vapor.amplitude_calibration") cfg.vapor.amplitude_calibration = parse_double(key, value);
  else if (key == "vapor.atom_mass_kg") cfg.vapor.atom_mass = parse_double(key, value);
  else if (key == "lines.file") cfg.lines_file = value;
  else if (key == "grid.start_hz") cfg.grid.start = parse_double(key, value);
  else if (key == "grid.step_hz") cfg.grid.step = parse_double(key, value);
  else if (key == "grid.count") cfg.grid.count = parse_uint(key, value);
  else if (key == "ensemble.lifetime_s") cfg.ensemble.lifetime = parse_double(key, value);
  else if (key == "ensemble.jitter_fwhm_hz") cfg.ensemble.jitter_fwhm = parse_double(key, value);
  else if (key == "ensemble.center_detuning_hz") cfg.ensemble.center_detuning = parse_double(key, value);
  else if (key == "ensemble.samples") cfg.ensemble.samples = parse_uint(key, value);
  else if (key == "ensemble.seed") cfg.ensemble.seed = parse_uint(key, value);
  else if (key == "geometry") {
    if (value == "linear_pbs") cfg.geometry = Geometry::linear_pbs;
    else if (value == "qwp_pbs") cfg.geometry = Geometry::qwp_pbs;
    else throw config_error(key, "expected linear_pbs or qwp_pbs, got '" + value + "'");
  }
  else if (key == "runner") {
    if (value == "scan") cfg.runner = Runner::scan;
    else if (value == "pulse") cfg.runner = Runner::pulse;
    else if (value == "sweep") cfg.runner = Runner::sweep;
    else throw config_error(key, "expected scan, pulse or sweep, got '" + value + "'");
  }
  else if (key == "sweep.b_min_t") cfg.sweep.b_min = parse_double(key, value);
  else if (key == "sweep.b_max_t") cfg.sweep.b_max = parse_double(key, value);
  else if (key == "sweep.steps") cfg.sweep.steps = parse_uint(key, value);
  else if (key == "sweep.ensemble_check") cfg.sweep.ensemble_check = parse_bool(key, value);
  else if (key == "tcspc.enabled") cfg.tcspc.enabled = parse_bool(key, value);
  else if (key == "tcspc.irf_fwhm_s") cfg.tcspc.irf_fwhm = parse_double(key, value);
  else if (key == "tcspc.rep_rate_hz") cfg.tcspc.rep_rate = parse_double(key, value);
  else if (key == "tcspc.total_counts") cfg.tcspc.total_counts = parse_uint(key, value);
  else if (key == "operating_detuning_hz") cfg.operating_detuning = parse_double(key, value);
  else if (key == "input_angle_rad") cfg.input_angle = parse_double(key, value);
  else if (key == "output_dir") cfg.output_dir = value;
  else throw config_error(key, "unknown configuration key");
}

inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config", "cannot open file: " + path);
  std::string row;
  std::size_t lineno = 0;
  while (std::getline(in, row)) {
    ++lineno;
    const auto hash = row.find('#');
    if (hash != std::string::npos) row.erase(hash);
    row = detail::trim(row);
    if (row.empty()) continue;
    const auto eq = row.find('=');
    if (eq == std::string::npos)
      throw config_error("config", "line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(cfg, detail::trim(row.substr(0, eq)), detail::trim(row.substr(eq + 1)));
  }
}

// key=value override of the form accepted by the config file.
inline void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw config_error("--set", "expected key=value, got '" + assignment + "'");
  apply_setting(cfg, detail::trim(assignment.substr(0, eq)),
                detail::trim(assignment.substr(eq + 1)));
}

inline void validate_config(const RunConfig& cfg) {
  if (!(cfg.vapor.temperature > 0.0)) throw config_error("vapor.temperature_k", "must be > 0");
  if (!(cfg.vapor.length > 0.0)) throw config_error("vapor.length_m", "must be > 0");
  if (!(cfg.vapor.line_center_frequency > 0.0)) throw config_error("vapor.line_center_hz", "must be > 0");
  if (cfg.vapor.density_override && *cfg.vapor.density_override < 0.0)
    throw config_error("vapor.density_override_m3", "must be >= 0");
  if (!(cfg.vapor.amplitude_calibration > 0.0))
    throw config_error("vapor.amplitude_calibration", "must be > 0");
  if (!(cfg.vapor.atom_mass > 0.0)) throw config_error("vapor.atom_mass_kg", "must be > 0");
  if (!(cfg.grid.step > 0.0)) throw config_error("grid.step_hz", "must be > 0");
  if (!is_pow2(cfg.grid.count)) throw config_error("grid.count", "must be a power of two >= 2");
  if (!(cfg.ensemble.lifetime > 0.0)) throw config_error("ensemble.lifetime_s", "must be > 0");
  if (cfg.ensemble.jitter_fwhm < 0.0) throw config_error("ensemble.jitter_fwhm_hz", "must be >= 0");
  if (cfg.ensemble.samples < 1) throw config_error("ensemble.samples", "must be >= 1");
  if (cfg.runner == Runner::sweep && cfg.sweep.steps < 2)
    throw config_error("sweep.steps", "must be >= 2 for the sweep runner");
  if (!(cfg.tcspc.rep_rate > 0.0)) throw config_error("tcspc.rep_rate_hz", "must be > 0");
  if (cfg.tcspc.irf_fwhm < 0.0) throw config_error("tcspc.irf_fwhm_s", "must be >= 0");
  if (!cfg.lines_file.empty()) {
    std::ifstream probe(cfg.lines_file);
    if (!probe) throw config_error("lines.file", "file does not exist: " + cfg.lines_file);
  }
  const auto table = cfg.line_table();
  if (table.empty()) throw config_error("lines.file", "line table is empty");
}

// Full resolved configuration, one key = value per line, stable order.
inline std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg) {
  using detail::fmt_double;
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("vapor.temperature_k", fmt_double(cfg.vapor.temperature));
  kv.emplace_back("vapor.length_m", fmt_double(cfg.vapor.length));
  kv.emplace_back("vapor.b_field_t", fmt_double(cfg.vapor.b_field));
  kv.emplace_back("vapor.line_center_hz", fmt_double(cfg.vapor.line_center_frequency));
  kv.emplace_back("vapor.density_override_m3",
                  cfg.vapor.density_override ? fmt_double(*cfg.vapor.density_override) : "none");
  kv.emplace_back("vapor.density_a", fmt_double(cfg.vapor.density_model.A));
  kv.emplace_back("vapor.density_b", fmt_double(cfg.vapor.density_model.B));
  kv.emplace_back("vapor.amplitude_calibration", fmt_double(cfg.vapor.amplitude_calibration));
  kv.emplace_back("vapor.atom_mass_kg", fmt_double(cfg.vapor.atom_mass));
  kv.emplace_back("lines.file", cfg.lines_file);
  kv.emplace_back("grid.start_hz", fmt_double(cfg.grid.start));
  kv.emplace_back("grid.step_hz", fmt_double(cfg.grid.step));
  kv.emplace_back("grid.count", std::to_string(cfg.grid.count));
  kv.emplace_back("ensemble.lifetime_s", fmt_double(cfg.ensemble.lifetime));
  kv.emplace_back("ensemble.jitter_fwhm_hz", fmt_double(cfg.ensemble.jitter_fwhm));
  kv.emplace_back("ensemble.center_detuning_hz", fmt_double(cfg.ensemble.center_detuning));
  kv.emplace_back("ensemble.samples", std::to_string(cfg.ensemble.samples));
  kv.emplace_back("ensemble.seed", std::to_string(cfg.ensemble.seed));
  kv.emplace_back("geometry", cfg.geometry == Geometry::linear_pbs ? "linear_pbs" : "qwp_pbs");
  kv.emplace_back("runner", cfg.runner == Runner::scan ? "scan"
                            : cfg.runner == Runner::pulse ? "pulse" : "sweep");
  kv.emplace_back("sweep.b_min_t", fmt_double(cfg.sweep.b_min));
  kv.emplace_back("sweep.b_max_t", fmt_double(cfg.sweep.b_max));
  kv.emplace_back("sweep.steps", std::to_string(cfg.sweep.steps));
  kv.emplace_back("sweep.ensemble_check", cfg.sweep.ensemble_check ? "true" : "false");
  kv.emplace_back("tcspc.enabled", cfg.tcspc.enabled ? "true" : "false");
  kv.emplace_back("tcspc.irf_fwhm_s", fmt_double(cfg.tcspc.irf_fwhm));
  kv.emplace_back("tcspc.rep_rate_hz", fmt_double(cfg.tcspc.rep_rate));
  kv.emplace_back("tcspc.total_counts", std::to_string(cfg.tcspc.total_counts));
  kv.emplace_back("operating_detuning_hz", fmt_double(cfg.operating_detuning));
  kv.emplace_back("input_angle_rad", fmt_double(cfg.input_angle));
  return kv;
}

}  // namespace slowlight

#endif
