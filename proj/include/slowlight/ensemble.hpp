#ifndef SLOWLIGHT_ENSEMBLE_HPP
#define SLOWLIGHT_ENSEMBLE_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "slowlight/polarimetry.hpp"
#include "slowlight/wavepacket.hpp"

namespace slowlight {

inline constexpr double gauss_fwhm_to_sigma = 1.0 / 2.354820045030949;

struct EnsembleSpec {
  double lifetime = 500e-12;        // s
  double jitter_fwhm = 3.0e9;       // Hz, spectral-diffusion Gaussian
  double center_detuning = 0.0;     // Hz
  std::size_t samples = 2000;
  std::uint64_t seed = 12345;
};

struct IntensityTrace {
  double t_start = 0.0;
  double t_step = 0.0;
  std::vector<double> intensity;

  double time_at(std::size_t j) const { return t_start + t_step * static_cast<double>(j); }
  double integral() const {
    double s = 0.0;
    for (double v : intensity) s += v;
    return s * t_step;
  }
  double centroid() const {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < intensity.size(); ++j) {
      num += intensity[j] * time_at(j);
      den += intensity[j];
    }
    if (den == 0.0) throw std::invalid_argument("IntensityTrace: zero-intensity trace");
    return num / den;
  }
};

namespace detail {

// One generator stream per (seed, index) pair so results do not depend on
// the order samples are evaluated in.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint64_t>(0x736c6f776c696768ull), seed, index};
  return std::mt19937_64(seq);
}

}  // namespace detail

inline std::vector<double> sample_carriers(const EnsembleSpec& spec) {
  std::vector<double> carriers(spec.samples);
  const double sigma = spec.jitter_fwhm * gauss_fwhm_to_sigma;
  for (std::size_t i = 0; i < spec.samples; ++i) {
    if (sigma == 0.0) {
      carriers[i] = spec.center_detuning;
    } else {
      auto rng = detail::sample_rng(spec.seed, i);
      std::normal_distribution<double> dist(spec.center_detuning, sigma);
      carriers[i] = dist(rng);
    }
  }
  return carriers;
}

namespace detail {

inline double default_trace_start(const FrequencyGrid& grid) {
  return -0.125 / grid.step;  // one eighth of the time window before t = 0
}

}  // namespace detail

// Mean time-domain intensity of Fourier-limited photons drawn from the
// carrier distribution, each propagated through the medium.
inline IntensityTrace ensemble_intensity(const EnsembleSpec& spec,
                                         const IndexProfile& profile, double length) {
  if (spec.samples < 1) throw std::invalid_argument("ensemble_intensity: samples must be >= 1");
  const auto carriers = sample_carriers(spec);
  const auto h = detail::transfer_factor(profile, length, true);
  const double t_start = detail::default_trace_start(profile.grid);
  IntensityTrace trace;
  trace.t_start = t_start;
  trace.t_step = 1.0 / (profile.grid.step * static_cast<double>(profile.grid.count));
  trace.intensity.assign(profile.grid.count, 0.0);
  for (const double carrier : carriers) {
    auto spec_amp = lorentzian_photon(spec.lifetime, carrier, profile.grid);
    for (std::size_t i = 0; i < h.size(); ++i) spec_amp.amplitude[i] *= h[i];
    const auto wp = to_time(spec_amp, t_start);
    if (detail::edge_energy_fraction(wp.amplitude) > 1e-3)
      throw window_error("ensemble_intensity: time window too short for the acquired delay");
    for (std::size_t j = 0; j < wp.amplitude.size(); ++j)
      trace.intensity[j] += std::norm(wp.amplitude[j]);
  }
  const double inv = 1.0 / static_cast<double>(spec.samples);
  for (auto& v : trace.intensity) v *= inv;
  return trace;
}

enum class Geometry { linear_pbs, qwp_pbs };

struct PortTraces {
  IntensityTrace port_h;
  IntensityTrace port_v;
};

// Polarization-resolved ensemble: linear input split into the circular
// components, each propagated with its own index profile, then projected
// onto the analyzer ports in the time domain.
inline PortTraces ensemble_ports(const EnsembleSpec& spec,
                                 const IndexProfile& profile_plus,
                                 const IndexProfile& profile_minus, double length,
                                 Geometry geometry, double input_angle = 0.0) {
  if (profile_plus.grid != profile_minus.grid)
    throw std::invalid_argument("ensemble_ports: grid mismatch");
  if (spec.samples < 1) throw std::invalid_argument("ensemble_ports: samples must be >= 1");
  const auto carriers = sample_carriers(spec);
  const auto hp = detail::transfer_factor(profile_plus, length, true);
  const auto hm = detail::transfer_factor(profile_minus, length, true);
  const auto& grid = profile_plus.grid;
  const double t_start = detail::default_trace_start(grid);
  PortTraces out;
  for (auto* tr : {&out.port_h, &out.port_v}) {
    tr->t_start = t_start;
    tr->t_step = 1.0 / (grid.step * static_cast<double>(grid.count));
    tr->intensity.assign(grid.count, 0.0);
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const auto ep = std::polar(inv_sqrt2, -input_angle);
  const auto em = std::polar(inv_sqrt2, +input_angle);
  SpectralAmplitude comp;
  comp.grid = grid;
  for (const double carrier : carriers) {
    const auto photon = lorentzian_photon(spec.lifetime, carrier, grid);
    comp.amplitude.resize(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i)
      comp.amplitude[i] = photon.amplitude[i] * ep * hp[i];
    const auto ap = to_time(comp, t_start);
    for (std::size_t i = 0; i < grid.count; ++i)
      comp.amplitude[i] = photon.amplitude[i] * em * hm[i];
    const auto am = to_time(comp, t_start);
    if (detail::edge_energy_fraction(ap.amplitude) > 2e-3 ||
        detail::edge_energy_fraction(am.amplitude) > 2e-3)
      throw window_error("ensemble_ports: time window too short for the acquired delay");
    if (geometry == Geometry::qwp_pbs) {
      for (std::size_t j = 0; j < grid.count; ++j) {
        out.port_h.intensity[j] += std::norm(ap.amplitude[j]);
        out.port_v.intensity[j] += std::norm(am.amplitude[j]);
      }
    } else {
      for (std::size_t j = 0; j < grid.count; ++j) {
        out.port_h.intensity[j] += std::norm((ap.amplitude[j] + am.amplitude[j]) * inv_sqrt2);
        out.port_v.intensity[j] += std::norm((ap.amplitude[j] - am.amplitude[j]) * inv_sqrt2);
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(spec.samples);
  for (auto& v : out.port_h.intensity) v *= inv;
  for (auto& v : out.port_v.intensity) v *= inv;
  return out;
}

// Detector-realistic histogram: Gaussian IRF, folding at the excitation
// period, Poisson counting noise. total_counts = 0 selects the noiseless
// infinite-count limit.
inline IntensityTrace synthesize_tcspc(const IntensityTrace& trace, double irf_fwhm,
                                       double rep_rate, std::uint64_t total_counts,
                                       std::uint64_t seed) {
  if (!(rep_rate > 0.0)) throw std::invalid_argument("synthesize_tcspc: rep_rate must be > 0");
  std::vector<double> smeared = trace.intensity;
  if (irf_fwhm > 0.0) {
    const double sigma = irf_fwhm * gauss_fwhm_to_sigma;
    const int half = static_cast<int>(std::ceil(6.0 * sigma / trace.t_step));
    std::vector<double> kernel(2 * half + 1);
    double ksum = 0.0;
    for (int k = -half; k <= half; ++k) {
      const double t = k * trace.t_step;
      kernel[k + half] = std::exp(-0.5 * t * t / (sigma * sigma));
      ksum += kernel[k + half];
    }
    for (auto& v : kernel) v /= ksum;
    smeared.assign(trace.intensity.size(), 0.0);
    const int n = static_cast<int>(trace.intensity.size());
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = -half; k <= half; ++k) {
        const int src = j - k;
        if (src >= 0 && src < n) acc += trace.intensity[src] * kernel[k + half];
      }
      smeared[j] = acc;
    }
  }
  const double period = 1.0 / rep_rate;
  const std::size_t bins = static_cast<std::size_t>(std::llround(period / trace.t_step));
  IntensityTrace folded;
  folded.t_start = 0.0;
  folded.t_step = trace.t_step;
  folded.intensity.assign(bins, 0.0);
  for (std::size_t j = 0; j < smeared.size(); ++j) {
    const double t = std::fmod(std::fmod(trace.time_at(j), period) + period, period);
    // nudge boundary-exact samples into their own bin despite rounding
    std::size_t b = static_cast<std::size_t>(std::floor(t / trace.t_step + 1e-9));
    if (b >= bins) b = bins - 1;
    folded.intensity[b] += smeared[j];
  }
  if (total_counts == 0) return folded;
  double sum = 0.0;
  for (double v : folded.intensity) sum += v;
  if (sum <= 0.0) return folded;
  const double scale = static_cast<double>(total_counts) / sum;
  std::mt19937_64 rng(seed);
  for (auto& v : folded.intensity) {
    std::poisson_distribution<std::uint64_t> dist(v * scale);
    v = static_cast<double>(dist(rng));
  }
  return folded;
}

}  // namespace slowlight

#endif
