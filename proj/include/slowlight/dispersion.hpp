#ifndef SLOWLIGHT_DISPERSION_HPP
#define SLOWLIGHT_DISPERSION_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "slowlight/constants.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/fft.hpp"
#include "slowlight/vapor.hpp"

namespace slowlight {

struct IndexProfile {
  FrequencyGrid grid;
  std::vector<double> n_real;  // n'
  std::vector<double> alpha;   // intensity absorption [1/m]
  Polarization polarization = Polarization::sigma_plus;
  double reference_frequency = 0.0;  // Hz, absolute frequency of detuning 0

  double abs_frequency(std::size_t i) const { return reference_frequency + grid.at(i); }
};

inline IndexProfile vacuum_profile(const FrequencyGrid& grid, double reference_frequency) {
  IndexProfile p;
  p.grid = grid;
  p.n_real.assign(grid.count, 1.0);
  p.alpha.assign(grid.count, 0.0);
  p.reference_frequency = reference_frequency;
  return p;
}

// n_c = sqrt(1 + chi); alpha = 2 k Im(n_c).
inline IndexProfile index_from_susceptibility(const SusceptibilityProfile& prof,
                                              double reference_frequency) {
  IndexProfile out;
  out.grid = prof.grid;
  out.polarization = prof.polarization;
  out.reference_frequency = reference_frequency;
  out.n_real.resize(prof.grid.count);
  out.alpha.resize(prof.grid.count);
  for (std::size_t i = 0; i < prof.grid.count; ++i) {
    const auto nc = std::sqrt(1.0 + prof.chi[i]);
    const double k = 2.0 * phys::pi * (reference_frequency + prof.grid.at(i)) / phys::c0;
    out.n_real[i] = nc.real();
    out.alpha[i] = 2.0 * k * nc.imag();
  }
  return out;
}

namespace detail {

// 4th-order central difference of n' with respect to frequency, at grid index i.
inline double dn_dnu(const IndexProfile& p, std::size_t i) {
  const auto& f = p.n_real;
  const double h = p.grid.step;
  return (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
}

inline double group_index_at(const IndexProfile& p, std::size_t i) {
  return p.n_real[i] + p.abs_frequency(i) * dn_dnu(p, i);
}

}  // namespace detail

// n_g = n' + nu dn'/dnu at a relative detuning [Hz], linearly interpolated
// between the two bracketing grid points.
inline double group_index(const IndexProfile& p, double frequency) {
  const auto& g = p.grid;
  if (!(frequency > g.at(2) && frequency < g.at(g.count - 3)))
    throw std::out_of_range("group_index: frequency outside differentiable grid interior");
  const double pos = (frequency - g.start) / g.step;
  const std::size_t i0 = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i0);
  const double a = detail::group_index_at(p, i0);
  const double b = detail::group_index_at(p, i0 + 1);
  return a + frac * (b - a);
}

// Delay relative to the vacuum transit of the same length.
inline double group_delay(const IndexProfile& p, double frequency, double length) {
  return (group_index(p, frequency) - 1.0) * length / phys::c0;
}

inline std::vector<double> transmission(const IndexProfile& p, double length) {
  if (length < 0.0) throw std::invalid_argument("transmission: length must be >= 0");
  std::vector<double> t(p.grid.count);
  for (std::size_t i = 0; i < p.grid.count; ++i)
    t[i] = std::exp(-p.alpha[i] * length);
  return t;
}

// Reconstructs n'-1 from alpha by the discrete dispersive Hilbert
// transform and returns max |reconstructed - stored| / max |n'-1|.
inline double kramers_kronig_residual(const IndexProfile& p) {
  const std::size_t n = p.grid.count;
  double edge = std::max(std::abs(p.alpha.front()), std::abs(p.alpha.back()));
  double peak_alpha = 0.0;
  for (double a : p.alpha) peak_alpha = std::max(peak_alpha, std::abs(a));
  if (peak_alpha == 0.0) return 0.0;
  if (edge > 1e-3 * peak_alpha)
    throw resolution_error("kramers_kronig_residual: absorption has not decayed at the grid edges");
  std::vector<double> n_imag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = 2.0 * phys::pi * p.abs_frequency(i) / phys::c0;
    n_imag[i] = p.alpha[i] / (2.0 * k);
  }
  // Quadrature on a 4x wider grid; the absorption wings continue with
  // their asymptotic 1/(nu-mu)^2 falloff to tame window truncation.
  const std::size_t ext = 4 * n;
  const std::size_t off = (ext - n) / 2;
  const double mu = p.grid.start + 0.5 * p.grid.step * static_cast<double>(n - 1);
  std::vector<double> wide(ext, 0.0);
  const double nu_lo = p.grid.start, nu_hi = p.grid.back();
  for (std::size_t i = 0; i < ext; ++i) {
    const double nu = nu_lo + p.grid.step * (static_cast<double>(i) - static_cast<double>(off));
    if (i < off) {
      const double r = (nu_lo - mu) / (nu - mu);
      wide[i] = n_imag.front() * r * r;
    } else if (i >= off + n) {
      const double r = (nu_hi - mu) / (nu - mu);
      wide[i] = n_imag.back() * r * r;
    } else {
      wide[i] = n_imag[i - off];
    }
  }
  const auto rec = hilbert_dispersive(wide);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num = std::max(num, std::abs(rec[i + off] - (p.n_real[i] - 1.0)));
    den = std::max(den, std::abs(p.n_real[i] - 1.0));
  }
  return den == 0.0 ? 0.0 : num / den;
}

}  // namespace slowlight

#endif
