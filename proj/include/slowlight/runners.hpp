#ifndef SLOWLIGHT_RUNNERS_HPP
#define SLOWLIGHT_RUNNERS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "slowlight/config.hpp"
#include "slowlight/csvio.hpp"
#include "slowlight/dispersion.hpp"
#include "slowlight/ensemble.hpp"
#include "slowlight/polarimetry.hpp"

namespace slowlight {

struct ProfilePair {
  IndexProfile plus;
  IndexProfile minus;
};

inline ProfilePair build_profiles(const RunConfig& cfg, double b_field) {
  VaporConfig vapor = cfg.vapor;
  vapor.b_field = b_field;
  const auto table = cfg.line_table();
  ProfilePair out;
  out.plus = index_from_susceptibility(
      build_susceptibility(vapor, table, cfg.grid, Polarization::sigma_plus),
      vapor.line_center_frequency);
  out.minus = index_from_susceptibility(
      build_susceptibility(vapor, table, cfg.grid, Polarization::sigma_minus),
      vapor.line_center_frequency);
  return out;
}

inline ProfilePair build_profiles(const RunConfig& cfg) {
  return build_profiles(cfg, cfg.vapor.b_field);
}

// Continuous-wave port spectra for unit input at each grid frequency.
inline PortSignals scan_ports(const RunConfig& cfg, const ProfilePair& prof) {
  SpectralAmplitude unit;
  unit.grid = cfg.grid;
  unit.amplitude.assign(cfg.grid.count, {1.0, 0.0});
  auto state = decompose_linear(cfg.input_angle, unit);
  const auto hp = detail::transfer_factor(prof.plus, cfg.vapor.length, false);
  const auto hm = detail::transfer_factor(prof.minus, cfg.vapor.length, false);
  for (std::size_t i = 0; i < cfg.grid.count; ++i) {
    state.sigma_plus[i] *= hp[i];
    state.sigma_minus[i] *= hm[i];
  }
  return cfg.geometry == Geometry::linear_pbs ? project_pbs_linear(state)
                                              : project_qwp_pbs(state);
}

inline double trace_peak_time(const IntensityTrace& tr) {
  std::size_t best = 0;
  double pbest = 0.0;
  for (std::size_t j = 0; j < tr.intensity.size(); ++j)
    if (tr.intensity[j] > pbest) { pbest = tr.intensity[j]; best = j; }
  double t = tr.time_at(best);
  if (best > 0 && best + 1 < tr.intensity.size()) {
    const double ym = tr.intensity[best - 1], yp = tr.intensity[best + 1];
    const double denom = ym - 2.0 * pbest + yp;
    if (denom != 0.0) t += 0.5 * (ym - yp) / denom * tr.t_step;
  }
  return t;
}

inline void export_index_profile(const IndexProfile& p, const std::filesystem::path& path,
                                 const std::vector<std::pair<std::string, std::string>>& header = {}) {
  CsvWriter csv(path, header, {"detuning_hz", "n_real", "alpha_per_m"});
  for (std::size_t i = 0; i < p.grid.count; ++i)
    csv.row(p.grid.at(i), p.n_real[i], p.alpha[i]);
  csv.close();
}

inline void export_wavepacket(const Wavepacket& wp, const std::filesystem::path& path,
                              const std::vector<std::pair<std::string, std::string>>& header = {}) {
  CsvWriter csv(path, header, {"time_s", "intensity", "re_amplitude", "im_amplitude"});
  for (std::size_t j = 0; j < wp.amplitude.size(); ++j)
    csv.row(wp.time_at(j), std::norm(wp.amplitude[j]), wp.amplitude[j].real(),
            wp.amplitude[j].imag());
  csv.close();
}

inline std::vector<std::filesystem::path> run_scan(const RunConfig& cfg) {
  const auto prof = build_profiles(cfg);
  const auto ports = scan_ports(cfg, prof);
  RunConfig zero_field = cfg;
  zero_field.vapor.b_field = 0.0;
  const auto prof0 = build_profiles(zero_field);
  const auto envelope = transmission(prof0.plus, cfg.vapor.length);
  const std::filesystem::path path =
      std::filesystem::path(cfg.output_dir) / "scan_ports.csv";
  CsvWriter csv(path, config_echo(cfg),
                {"detuning_hz", "port_h", "port_v", "transmission_b0"});
  for (std::size_t i = 0; i < cfg.grid.count; ++i)
    csv.row(cfg.grid.at(i), ports.port_h[i], ports.port_v[i], envelope[i]);
  csv.close();
  const auto dir = std::filesystem::path(cfg.output_dir);
  export_index_profile(prof.plus, dir / "index_sigma_plus.csv", config_echo(cfg));
  export_index_profile(prof.minus, dir / "index_sigma_minus.csv", config_echo(cfg));
  return {path, dir / "index_sigma_plus.csv", dir / "index_sigma_minus.csv"};
}

struct PulseResult {
  PortTraces medium;
  PortTraces vacuum;
  double centroid_delay_h = 0.0, centroid_delay_v = 0.0;
  double peak_delay_h = 0.0, peak_delay_v = 0.0;
};

inline PulseResult pulse_traces(const RunConfig& cfg) {
  const auto prof = build_profiles(cfg);
  PulseResult r;
  r.medium = ensemble_ports(cfg.ensemble, prof.plus, prof.minus, cfg.vapor.length,
                            cfg.geometry, cfg.input_angle);
  const auto vac = vacuum_profile(cfg.grid, cfg.vapor.line_center_frequency);
  // vacuum is carrier independent, a single jitter-free sample is exact
  EnsembleSpec vac_spec = cfg.ensemble;
  vac_spec.samples = 1;
  vac_spec.jitter_fwhm = 0.0;
  r.vacuum = ensemble_ports(vac_spec, vac, vac, cfg.vapor.length, cfg.geometry,
                            cfg.input_angle);
  r.centroid_delay_h = r.medium.port_h.centroid() - r.vacuum.port_h.centroid();
  r.centroid_delay_v = r.medium.port_v.centroid() - r.vacuum.port_v.centroid();
  r.peak_delay_h = trace_peak_time(r.medium.port_h) - trace_peak_time(r.vacuum.port_h);
  r.peak_delay_v = trace_peak_time(r.medium.port_v) - trace_peak_time(r.vacuum.port_v);
  return r;
}

inline std::vector<std::filesystem::path> run_pulse(const RunConfig& cfg) {
  const auto r = pulse_traces(cfg);
  std::vector<std::filesystem::path> written;
  const std::filesystem::path dir(cfg.output_dir);
  {
    CsvWriter csv(dir / "pulse_ports.csv", config_echo(cfg),
                  {"time_s", "port_h", "port_v"});
    for (std::size_t j = 0; j < r.medium.port_h.intensity.size(); ++j)
      csv.row(r.medium.port_h.time_at(j), r.medium.port_h.intensity[j],
              r.medium.port_v.intensity[j]);
    csv.close();
    written.push_back(dir / "pulse_ports.csv");
  }
  {
    auto kv = config_echo(cfg);
    kv.emplace_back("centroid_delay_h_s", detail::fmt_double(r.centroid_delay_h));
    kv.emplace_back("centroid_delay_v_s", detail::fmt_double(r.centroid_delay_v));
    kv.emplace_back("peak_delay_h_s", detail::fmt_double(r.peak_delay_h));
    kv.emplace_back("peak_delay_v_s", detail::fmt_double(r.peak_delay_v));
    write_key_values(dir / "pulse_summary.txt", kv);
    written.push_back(dir / "pulse_summary.txt");
  }
  if (cfg.tcspc.enabled) {
    const auto th = synthesize_tcspc(r.medium.port_h, cfg.tcspc.irf_fwhm,
                                     cfg.tcspc.rep_rate, cfg.tcspc.total_counts,
                                     cfg.ensemble.seed);
    const auto tv = synthesize_tcspc(r.medium.port_v, cfg.tcspc.irf_fwhm,
                                     cfg.tcspc.rep_rate, cfg.tcspc.total_counts,
                                     cfg.ensemble.seed + 1);
    CsvWriter csv(dir / "tcspc_ports.csv", config_echo(cfg),
                  {"time_s", "counts_h", "counts_v"});
    for (std::size_t j = 0; j < th.intensity.size(); ++j)
      csv.row(th.time_at(j), th.intensity[j], tv.intensity[j]);
    csv.close();
    written.push_back(dir / "tcspc_ports.csv");
  }
  return written;
}

struct SweepPoint {
  double b_field = 0.0;
  double delay_plus = 0.0;   // analytic group delay, sigma+
  double delay_minus = 0.0;  // analytic group delay, sigma-
  double ens_delay_plus = 0.0;
  double ens_delay_minus = 0.0;
};

inline std::vector<SweepPoint> sweep_points(const RunConfig& cfg) {
  std::vector<SweepPoint> pts(cfg.sweep.steps);
  IntensityTrace vac_trace;
  if (cfg.sweep.ensemble_check) {
    const auto vac = vacuum_profile(cfg.grid, cfg.vapor.line_center_frequency);
    EnsembleSpec vac_spec = cfg.ensemble;
    vac_spec.samples = 1;
    vac_spec.jitter_fwhm = 0.0;
    vac_trace = ensemble_intensity(vac_spec, vac, cfg.vapor.length);
  }
  for (std::size_t i = 0; i < cfg.sweep.steps; ++i) {
    const double frac = cfg.sweep.steps == 1
                            ? 0.0
                            : static_cast<double>(i) / static_cast<double>(cfg.sweep.steps - 1);
    SweepPoint& p = pts[i];
    p.b_field = cfg.sweep.b_min + frac * (cfg.sweep.b_max - cfg.sweep.b_min);
    const auto prof = build_profiles(cfg, p.b_field);
    p.delay_plus = group_delay(prof.plus, cfg.operating_detuning, cfg.vapor.length);
    p.delay_minus = group_delay(prof.minus, cfg.operating_detuning, cfg.vapor.length);
    if (cfg.sweep.ensemble_check) {
      const auto tp = ensemble_intensity(cfg.ensemble, prof.plus, cfg.vapor.length);
      const auto tm = ensemble_intensity(cfg.ensemble, prof.minus, cfg.vapor.length);
      p.ens_delay_plus = tp.centroid() - vac_trace.centroid();
      p.ens_delay_minus = tm.centroid() - vac_trace.centroid();
    }
  }
  return pts;
}

inline std::vector<std::filesystem::path> run_sweep(const RunConfig& cfg) {
  const auto pts = sweep_points(cfg);
  const std::filesystem::path path =
      std::filesystem::path(cfg.output_dir) / "sweep_delays.csv";
  std::vector<std::string> cols{"b_t", "delay_sigma_plus_s", "delay_sigma_minus_s"};
  if (cfg.sweep.ensemble_check) {
    cols.push_back("ensemble_delay_sigma_plus_s");
    cols.push_back("ensemble_delay_sigma_minus_s");
  }
  CsvWriter csv(path, config_echo(cfg), cols);
  for (const auto& p : pts) {
    if (cfg.sweep.ensemble_check)
      csv.row(p.b_field, p.delay_plus, p.delay_minus, p.ens_delay_plus, p.ens_delay_minus);
    else
      csv.row(p.b_field, p.delay_plus, p.delay_minus);
  }
  csv.close();
  return {path};
}

}  // namespace slowlight

#endif
