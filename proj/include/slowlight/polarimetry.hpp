#ifndef SLOWLIGHT_POLARIMETRY_HPP
#define SLOWLIGHT_POLARIMETRY_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "slowlight/wavepacket.hpp"

namespace slowlight {

// Circular decomposition of a spectral amplitude. sigma_plus maps to the
// H output port of the quarter-wave-plate + PBS analyzer.
struct PolarizedSpectrum {
  FrequencyGrid grid;
  std::vector<std::complex<double>> sigma_plus;
  std::vector<std::complex<double>> sigma_minus;
};

struct PortSignals {
  std::vector<double> port_h;
  std::vector<double> port_v;
};

// Linear input at `angle` to horizontal: sigma_pm = S e^{∓i angle}/sqrt2.
inline PolarizedSpectrum decompose_linear(double angle, const SpectralAmplitude& spectrum) {
  PolarizedSpectrum out;
  out.grid = spectrum.grid;
  const std::size_t n = spectrum.amplitude.size();
  out.sigma_plus.resize(n);
  out.sigma_minus.resize(n);
  const auto ep = std::polar(1.0 / std::sqrt(2.0), -angle);
  const auto em = std::polar(1.0 / std::sqrt(2.0), +angle);
  for (std::size_t i = 0; i < n; ++i) {
    out.sigma_plus[i] = spectrum.amplitude[i] * ep;
    out.sigma_minus[i] = spectrum.amplitude[i] * em;
  }
  return out;
}

// Inverse of decompose_linear for the same analyzer angle.
inline SpectralAmplitude recompose_linear(double angle, const PolarizedSpectrum& state) {
  SpectralAmplitude out;
  out.grid = state.grid;
  const std::size_t n = state.sigma_plus.size();
  out.amplitude.resize(n);
  const auto ep = std::polar(1.0 / std::sqrt(2.0), +angle);
  const auto em = std::polar(1.0 / std::sqrt(2.0), -angle);
  for (std::size_t i = 0; i < n; ++i)
    out.amplitude[i] = state.sigma_plus[i] * ep + state.sigma_minus[i] * em;
  return out;
}

inline PolarizedSpectrum propagate_polarized(const PolarizedSpectrum& input,
                                             const IndexProfile& profile_plus,
                                             const IndexProfile& profile_minus,
                                             double length) {
  if (input.grid != profile_plus.grid || input.grid != profile_minus.grid)
    throw std::invalid_argument("propagate_polarized: grid mismatch");
  const auto hp = detail::transfer_factor(profile_plus, length, true);
  const auto hm = detail::transfer_factor(profile_minus, length, true);
  PolarizedSpectrum out;
  out.grid = input.grid;
  const std::size_t n = input.sigma_plus.size();
  out.sigma_plus.resize(n);
  out.sigma_minus.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.sigma_plus[i] = input.sigma_plus[i] * hp[i];
    out.sigma_minus[i] = input.sigma_minus[i] * hm[i];
  }
  return out;
}

// QWP at 45 deg to the PBS axes: the circular components map onto the
// linear output ports, H = |sigma+|^2, V = |sigma-|^2.
inline PortSignals project_qwp_pbs(const PolarizedSpectrum& state) {
  PortSignals out;
  const std::size_t n = state.sigma_plus.size();
  out.port_h.resize(n);
  out.port_v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.port_h[i] = std::norm(state.sigma_plus[i]);
    out.port_v[i] = std::norm(state.sigma_minus[i]);
  }
  return out;
}

// Bare PBS, no wave plate: Faraday-rotation geometry.
inline PortSignals project_pbs_linear(const PolarizedSpectrum& state) {
  PortSignals out;
  const std::size_t n = state.sigma_plus.size();
  out.port_h.resize(n);
  out.port_v.resize(n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.port_h[i] = std::norm((state.sigma_plus[i] + state.sigma_minus[i]) * inv_sqrt2);
    out.port_v[i] = std::norm((state.sigma_plus[i] - state.sigma_minus[i]) * inv_sqrt2);
  }
  return out;
}

// Rotation angle from circular birefringence, theta = (n+ - n-) pi nu L / c.
inline std::vector<double> faraday_rotation_angle(const IndexProfile& profile_plus,
                                                  const IndexProfile& profile_minus,
                                                  double length) {
  if (profile_plus.grid != profile_minus.grid)
    throw std::invalid_argument("faraday_rotation_angle: grid mismatch");
  std::vector<double> theta(profile_plus.grid.count);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    theta[i] = (profile_plus.n_real[i] - profile_minus.n_real[i]) * phys::pi *
               profile_plus.abs_frequency(i) * length / phys::c0;
  }
  return theta;
}

// Dichroic lock signal: difference of the circular-analyzed ports.
inline std::vector<double> davll_signal(const PortSignals& ports) {
  std::vector<double> d(ports.port_h.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = ports.port_h[i] - ports.port_v[i];
  return d;
}

}  // namespace slowlight

#endif
