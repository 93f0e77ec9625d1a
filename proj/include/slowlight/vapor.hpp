#ifndef SLOWLIGHT_VAPOR_HPP
#define SLOWLIGHT_VAPOR_HPP

#include <cmath>
#include <complex>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "slowlight/constants.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/faddeeva.hpp"
#include "slowlight/grid.hpp"

namespace slowlight {

enum class Polarization { sigma_plus, sigma_minus };

inline double polarization_sign(Polarization p) {
  return p == Polarization::sigma_plus ? +1.0 : -1.0;
}

// Two-coefficient saturated vapor pressure law, log10 P[Pa] = A - B/T.
struct DensityModel {
  double A = 9.171;   // liquid Cs
  double B = 3830.0;  // K
};

struct VaporConfig {
  double temperature = 403.15;              // K
  double length = 0.25;                     // m
  double b_field = 0.0;                     // T, signed longitudinal
  double line_center_frequency = 335.116048807e12;  // Hz, Cs D1 reference
  std::optional<double> density_override;   // m^-3
  DensityModel density_model;
  double amplitude_calibration = 0.34;      // global susceptibility scale,
                                            // calibrated to the 25 ns zero-field delay
  double electron_charge = phys::e_charge;
  double electron_mass = phys::e_mass;
  double atom_mass = 132.90545196 * phys::amu;  // kg, Cs-133
};

struct SpectralLine {
  double detuning = 0.0;       // Hz, relative to line_center_frequency
  double weight = 1.0;         // dimensionless relative strength
  double natural_hwhm = 4.56e6;   // Hz
  double zeeman_slope = 14.0e9;   // Hz/T, applied with the helicity sign
};

using LineTable = std::vector<SpectralLine>;

struct SusceptibilityProfile {
  FrequencyGrid grid;
  std::vector<std::complex<double>> chi;
  Polarization polarization = Polarization::sigma_plus;
};

// Hyperfine manifolds of the D1 line: ground split 9.192 GHz, excited
// split 1.2 GHz, weights from the ground-level degeneracies 2F+1.
inline LineTable default_line_table() {
  const double g = 9.192631770e9 / 2.0;  // Hz
  const double e = 1.2e9 / 2.0;
  return {
      {-g - e, 7.0, 4.56e6, 14.0e9},
      {-g + e, 7.0, 4.56e6, 14.0e9},
      {+g - e, 9.0, 4.56e6, 14.0e9},
      {+g + e, 9.0, 4.56e6, 14.0e9},
  };
}

// One spectral line per row: detuning_hz weight hwhm_hz zeeman_slope_hz_per_t
inline LineTable load_line_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open line table: " + path);
  LineTable table;
  std::string row;
  while (std::getline(in, row)) {
    const auto hash = row.find('#');
    if (hash != std::string::npos) row.erase(hash);
    std::istringstream ss(row);
    SpectralLine ln;
    if (!(ss >> ln.detuning)) continue;  // blank/comment line
    if (!(ss >> ln.weight >> ln.natural_hwhm >> ln.zeeman_slope))
      throw std::invalid_argument("malformed line table row: " + row);
    if (ln.weight < 0.0 || !(ln.natural_hwhm > 0.0))
      throw std::invalid_argument("line table row violates weight/hwhm bounds: " + row);
    table.push_back(ln);
  }
  return table;
}

// Single Lorentzian oscillator response, delta in angular units [rad/s].
// Sign convention delta = omega0 - omega, so Im >= 0 for any delta.
inline std::complex<double> lorentzian_susceptibility(double detuning_from_line,
                                                      const SpectralLine& line,
                                                      double prefactor) {
  if (!std::isfinite(detuning_from_line) || !std::isfinite(prefactor))
    throw std::invalid_argument("lorentzian_susceptibility: non-finite input");
  if (!(line.natural_hwhm > 0.0))
    throw std::invalid_argument("lorentzian_susceptibility: natural_hwhm must be > 0");
  const double gamma = 2.0 * phys::pi * line.natural_hwhm;
  return prefactor * line.weight / std::complex<double>(detuning_from_line, -gamma);
}

inline double number_density(double temperature, const DensityModel& model) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("number_density: temperature must be > 0");
  const double pressure = std::pow(10.0, model.A - model.B / temperature);  // Pa
  return pressure / (phys::k_boltz * temperature);
}

inline double number_density(const VaporConfig& cfg) {
  if (cfg.density_override) return *cfg.density_override;
  return number_density(cfg.temperature, cfg.density_model);
}

// Doppler standard deviation of the line, in Hz.
inline double doppler_sigma(double line_center_frequency, double temperature,
                            double atom_mass) {
  return line_center_frequency / phys::c0 *
         std::sqrt(phys::k_boltz * temperature / atom_mass);
}

inline LineTable zeeman_shift_lines(const LineTable& table, double b_field,
                                    Polarization pol) {
  const double s = polarization_sign(pol);
  LineTable shifted = table;
  for (auto& ln : shifted) ln.detuning += s * ln.zeeman_slope * b_field;
  return shifted;
}

// Voigt susceptibility of one line on the whole grid: the Lorentzian
// oscillator convolved with the Maxwell-Boltzmann Gaussian, evaluated
// through the complex probability function.
inline std::vector<std::complex<double>> doppler_susceptibility(
    const SpectralLine& line, const FrequencyGrid& grid, double temperature,
    double atom_mass, double prefactor, double line_center_frequency) {
  validate_grid(grid);
  if (!(temperature > 0.0))
    throw std::invalid_argument("doppler_susceptibility: temperature must be > 0");
  const double sigma = doppler_sigma(line_center_frequency, temperature, atom_mass);
  if (grid.step > line.natural_hwhm && grid.step > sigma / 4.0)
    throw resolution_error("doppler_susceptibility: grid step " +
                           std::to_string(grid.step) +
                           " Hz resolves neither the natural width nor the Doppler width");
  const double gamma = 2.0 * phys::pi * line.natural_hwhm;
  const double sig_w = 2.0 * phys::pi * sigma;
  const double inv = 1.0 / (std::sqrt(2.0) * sig_w);
  // chi(nu) = C * i sqrt(pi)/(sqrt2 sigma) * conj(w((delta + i gamma)/(sqrt2 sigma)))
  const double scale = prefactor * line.weight * phys::sqrt_pi * inv;
  std::vector<std::complex<double>> out(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double delta = 2.0 * phys::pi * (line.detuning - grid.at(i));
    const auto w = faddeeva({delta * inv, gamma * inv});
    out[i] = scale * std::complex<double>(w.imag(), w.real());
  }
  return out;
}

// Oscillator prefactor N e^2 / (2 m eps0 omega0) in rad/s, including the
// calibration knob. All unit-system bookkeeping lives here.
inline double susceptibility_prefactor(const VaporConfig& cfg) {
  const double omega0 = 2.0 * phys::pi * cfg.line_center_frequency;
  return number_density(cfg) * cfg.electron_charge * cfg.electron_charge /
         (2.0 * cfg.electron_mass * phys::eps0 * omega0) *
         cfg.amplitude_calibration;
}

inline SusceptibilityProfile build_susceptibility(const VaporConfig& cfg,
                                                  const LineTable& table,
                                                  const FrequencyGrid& grid,
                                                  Polarization pol) {
  validate_grid(grid);
  if (table.empty())
    throw std::invalid_argument("build_susceptibility: empty line table");
  if (!(cfg.temperature > 0.0) || !(cfg.length > 0.0))
    throw std::invalid_argument("build_susceptibility: temperature and length must be > 0");
  const LineTable shifted = zeeman_shift_lines(table, cfg.b_field, pol);
  const double sigma =
      doppler_sigma(cfg.line_center_frequency, cfg.temperature, cfg.atom_mass);
  for (const auto& ln : shifted) {
    if (ln.detuning - 10.0 * sigma < grid.start || ln.detuning + 10.0 * sigma > grid.back())
      throw std::invalid_argument(
          "build_susceptibility: grid must span all shifted lines plus 10 Doppler widths");
  }
  // Weights are relative: they share the total line strength, so the
  // oscillator prefactor is divided by their sum.
  double weight_sum = 0.0;
  for (const auto& ln : table) weight_sum += ln.weight;
  const double pref =
      weight_sum > 0.0 ? susceptibility_prefactor(cfg) / weight_sum : 0.0;
  SusceptibilityProfile prof;
  prof.grid = grid;
  prof.polarization = pol;
  prof.chi.assign(grid.count, {0.0, 0.0});
  if (pref == 0.0) return prof;
  for (const auto& ln : shifted) {
    const auto part = doppler_susceptibility(ln, grid, cfg.temperature,
                                             cfg.atom_mass, pref,
                                             cfg.line_center_frequency);
    for (std::size_t i = 0; i < grid.count; ++i) prof.chi[i] += part[i];
  }
  return prof;
}

}  // namespace slowlight

#endif
