#ifndef SLOWLIGHT_WAVEPACKET_HPP
#define SLOWLIGHT_WAVEPACKET_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "slowlight/dispersion.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/fft.hpp"

namespace slowlight {

// Time-domain amplitude on a uniform grid. Its spectral twin lives on a
// FrequencyGrid with step = 1/(t_step * count).
struct Wavepacket {
  double t_start = 0.0;  // s
  double t_step = 0.0;   // s
  std::vector<std::complex<double>> amplitude;

  double time_at(std::size_t j) const { return t_start + t_step * static_cast<double>(j); }
  double energy() const {
    double e = 0.0;
    for (const auto& a : amplitude) e += std::norm(a);
    return e * t_step;
  }
};

struct SpectralAmplitude {
  FrequencyGrid grid;
  std::vector<std::complex<double>> amplitude;

  double energy() const {
    double e = 0.0;
    for (const auto& a : amplitude) e += std::norm(a);
    return e * grid.step;
  }
};

namespace detail {

inline std::complex<double> cis(double phase) {
  return {std::cos(phase), std::sin(phase)};
}

// Fraction of energy sitting in the outermost 1% of bins on each side.
inline double edge_energy_fraction(const std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  const std::size_t m = std::max<std::size_t>(1, n / 100);
  double edge = 0.0, total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = std::norm(a[i]);
    total += p;
    if (i < m || i >= n - m) edge += p;
  }
  return total > 0.0 ? edge / total : 0.0;
}

}  // namespace detail

// Analysis transform A(nu) = integral a(t) e^{+2 pi i nu t} dt, discretized
// on the dual grid. `grid.start` selects where detuning zero lands.
inline SpectralAmplitude to_spectrum(const Wavepacket& wp, const FrequencyGrid& grid) {
  validate_grid(grid);
  const std::size_t n = wp.amplitude.size();
  if (n != grid.count)
    throw std::invalid_argument("to_spectrum: grid count must match packet length");
  if (std::abs(grid.step * wp.t_step * static_cast<double>(n) - 1.0) > 1e-9)
    throw std::invalid_argument("to_spectrum: grid is not the Fourier dual of the time axis");
  std::vector<std::complex<double>> buf(n);
  const double w0 = 2.0 * phys::pi * grid.start * wp.t_step;
  for (std::size_t j = 0; j < n; ++j)
    buf[j] = wp.amplitude[j] * detail::cis(w0 * static_cast<double>(j));
  fft(buf, true);  // e^{+2 pi i jk/n} kernel, carries 1/n
  SpectralAmplitude out;
  out.grid = grid;
  out.amplitude.resize(n);
  const double norm = wp.t_step * static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ph = 2.0 * phys::pi * grid.at(k) * wp.t_start;
    out.amplitude[k] = buf[k] * detail::cis(ph) * norm;
  }
  return out;
}

// Synthesis transform a(t) = integral A(nu) e^{-2 pi i nu t} dnu.
inline Wavepacket to_time(const SpectralAmplitude& spec, double t_start) {
  const std::size_t n = spec.amplitude.size();
  const double t_step = 1.0 / (spec.grid.step * static_cast<double>(n));
  std::vector<std::complex<double>> buf(n);
  const double w0 = -2.0 * phys::pi * spec.grid.step * t_start;
  for (std::size_t k = 0; k < n; ++k)
    buf[k] = spec.amplitude[k] * detail::cis(w0 * static_cast<double>(k));
  fft(buf, false);
  Wavepacket out;
  out.t_start = t_start;
  out.t_step = t_step;
  out.amplitude.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double ph = -2.0 * phys::pi * spec.grid.start * (t_start + t_step * static_cast<double>(j));
    out.amplitude[j] = buf[j] * detail::cis(ph) * spec.grid.step;
  }
  return out;
}

// Fourier-limited photon: unit-energy Lorentzian spectrum whose time twin
// is a one-sided exponential with intensity 1/e-time = lifetime.
inline SpectralAmplitude lorentzian_photon(double lifetime, double carrier_detuning,
                                           const FrequencyGrid& grid) {
  validate_grid(grid);
  if (!(lifetime > 0.0)) throw std::invalid_argument("lorentzian_photon: lifetime must be > 0");
  if (grid.step >= 1.0 / (20.0 * 2.0 * phys::pi * lifetime))
    throw resolution_error("lorentzian_photon: grid step does not resolve the photon linewidth");
  if (!grid.contains(carrier_detuning))
    throw std::invalid_argument("lorentzian_photon: carrier detuning outside grid");
  SpectralAmplitude out;
  out.grid = grid;
  out.amplitude.resize(grid.count);
  double e = 0.0;
  for (std::size_t k = 0; k < grid.count; ++k) {
    const double d = grid.at(k) - carrier_detuning;
    const auto a = 1.0 / std::complex<double>(1.0, -2.0 * 2.0 * phys::pi * d * lifetime);
    out.amplitude[k] = a;
    e += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(e * grid.step);
  for (auto& a : out.amplitude) a *= scale;
  return out;
}

namespace detail {

// exp(i n_c k L) per grid point; co_vacuum subtracts the vacuum phase k L.
inline std::vector<std::complex<double>> transfer_factor(const IndexProfile& profile,
                                                         double length, bool co_vacuum) {
  std::vector<std::complex<double>> h(profile.grid.count);
  for (std::size_t i = 0; i < profile.grid.count; ++i) {
    const double k = 2.0 * phys::pi * profile.abs_frequency(i) / phys::c0;
    const double n_eff = profile.n_real[i] - (co_vacuum ? 1.0 : 0.0);
    h[i] = cis(n_eff * k * length) * std::exp(-0.5 * profile.alpha[i] * length);
  }
  return h;
}

}  // namespace detail

inline SpectralAmplitude propagate_spectrum(const SpectralAmplitude& input,
                                            const IndexProfile& profile, double length) {
  if (input.grid != profile.grid)
    throw std::invalid_argument("propagate_spectrum: input and profile grids differ");
  const auto h = detail::transfer_factor(profile, length, false);
  SpectralAmplitude out;
  out.grid = input.grid;
  out.amplitude.resize(input.amplitude.size());
  for (std::size_t i = 0; i < h.size(); ++i) out.amplitude[i] = input.amplitude[i] * h[i];
  return out;
}

// Full pipeline in the co-vacuum frame: vacuum propagation is the identity.
inline Wavepacket propagate_wavepacket(const Wavepacket& input,
                                       const IndexProfile& profile, double length) {
  if (detail::edge_energy_fraction(input.amplitude) > 1e-3)
    throw std::invalid_argument("propagate_wavepacket: input packet touches the window edges");
  auto spec = to_spectrum(input, profile.grid);
  const auto h = detail::transfer_factor(profile, length, true);
  for (std::size_t i = 0; i < h.size(); ++i) spec.amplitude[i] *= h[i];
  Wavepacket out = to_time(spec, input.t_start);
  if (detail::edge_energy_fraction(out.amplitude) > 1e-3)
    throw window_error("propagate_wavepacket: time window too short for the acquired delay");
  return out;
}

enum class DelayMethod { centroid, peak };

namespace detail {

inline double centroid_time(const Wavepacket& wp) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < wp.amplitude.size(); ++j) {
    const double p = std::norm(wp.amplitude[j]);
    num += p * wp.time_at(j);
    den += p;
  }
  if (den == 0.0) throw std::invalid_argument("extract_delay: zero-energy packet");
  return num / den;
}

inline double peak_time(const Wavepacket& wp) {
  std::size_t best = 0;
  double pbest = 0.0, total = 0.0;
  for (std::size_t j = 0; j < wp.amplitude.size(); ++j) {
    const double p = std::norm(wp.amplitude[j]);
    total += p;
    if (p > pbest) { pbest = p; best = j; }
  }
  if (total == 0.0) throw std::invalid_argument("extract_delay: zero-energy packet");
  double t = wp.time_at(best);
  if (best > 0 && best + 1 < wp.amplitude.size()) {
    const double ym = std::norm(wp.amplitude[best - 1]);
    const double yp = std::norm(wp.amplitude[best + 1]);
    const double denom = ym - 2.0 * pbest + yp;
    if (denom != 0.0) t += 0.5 * (ym - yp) / denom * wp.t_step;
  }
  return t;
}

}  // namespace detail

inline double extract_delay(const Wavepacket& input, const Wavepacket& output,
                            DelayMethod method = DelayMethod::centroid) {
  switch (method) {
    case DelayMethod::centroid:
      return detail::centroid_time(output) - detail::centroid_time(input);
    case DelayMethod::peak:
      return detail::peak_time(output) - detail::peak_time(input);
  }
  throw std::invalid_argument("extract_delay: unknown method");
}

}  // namespace slowlight

#endif
