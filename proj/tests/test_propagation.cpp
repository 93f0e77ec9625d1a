#include <doctest.h>

#include <cmath>
#include <complex>

#include "slowlight/dispersion.hpp"
#include "slowlight/wavepacket.hpp"

using namespace slowlight;

namespace {

constexpr double kNu0 = 335.116048807e12;

FrequencyGrid photon_grid(std::size_t count) {
  return {-20e9, 40e9 / static_cast<double>(count), count};
}

Wavepacket gaussian_packet(double center, double sigma, double t_start, double t_step,
                           std::size_t n) {
  Wavepacket wp;
  wp.t_start = t_start;
  wp.t_step = t_step;
  wp.amplitude.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = wp.time_at(j) - center;
    wp.amplitude[j] = std::exp(-0.25 * t * t / (sigma * sigma));
  }
  return wp;
}

// Uniform index step that delays by exactly `delay` in the co-vacuum frame.
IndexProfile delay_medium(const FrequencyGrid& grid, double delay, double length) {
  auto p = vacuum_profile(grid, kNu0);
  const double dn = delay * phys::c0 / length;
  for (auto& v : p.n_real) v += dn;
  return p;
}

double energy_before(const Wavepacket& wp, double t_cut) {
  double pre = 0.0, total = 0.0;
  for (std::size_t j = 0; j < wp.amplitude.size(); ++j) {
    const double p = std::norm(wp.amplitude[j]);
    total += p;
    if (wp.time_at(j) < t_cut) pre += p;
  }
  return pre / total;
}

}  // namespace

TEST_CASE("lorentzian photon has unit energy in both domains") {
  const auto grid = photon_grid(4096);
  const auto photon = lorentzian_photon(500e-12, 0.0, grid);
  CHECK(photon.energy() == doctest::Approx(1.0).epsilon(1e-12));
  const auto wp = to_time(photon, -0.125 / grid.step);
  CHECK(wp.energy() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("photon intensity decays with 1/e-time equal to the lifetime") {
  const double lifetime = 500e-12;
  const auto grid = photon_grid(32768);
  const auto wp = to_time(lorentzian_photon(lifetime, 0.0, grid), -0.125 / grid.step);
  // t_step = 25 ps, so the lifetime is an exact bin count; measure the decay
  // between interior points to stay clear of the band-limited onset
  const std::size_t tau_bins = static_cast<std::size_t>(std::llround(lifetime / wp.t_step));
  REQUIRE(std::abs(tau_bins * wp.t_step - lifetime) < 1e-15);
  std::size_t jp = 0;
  double pbest = 0.0;
  for (std::size_t j = 0; j < wp.amplitude.size(); ++j)
    if (std::norm(wp.amplitude[j]) > pbest) { pbest = std::norm(wp.amplitude[j]); jp = j; }
  const std::size_t j1 = jp + 3 * tau_bins;
  const double ratio = std::norm(wp.amplitude[j1 + tau_bins]) / std::norm(wp.amplitude[j1]);
  CHECK(ratio == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
}

TEST_CASE("photon spectral intensity FWHM is 1/(2 pi lifetime)") {
  const double lifetime = 500e-12;
  const auto grid = photon_grid(32768);
  const auto photon = lorentzian_photon(lifetime, 0.0, grid);
  std::vector<double> p(grid.count);
  double peak = 0.0;
  std::size_t ip = 0;
  for (std::size_t i = 0; i < grid.count; ++i) {
    p[i] = std::norm(photon.amplitude[i]);
    if (p[i] > peak) { peak = p[i]; ip = i; }
  }
  const double half = 0.5 * peak;
  auto cross = [&](int dir) {
    std::size_t i = ip;
    while (p[i] > half) i += dir;
    const std::size_t a = i - dir;
    const double frac = (p[a] - half) / (p[a] - p[i]);
    return grid.at(a) + frac * dir * grid.step;
  };
  const double fwhm = cross(+1) - cross(-1);
  CHECK(fwhm == doctest::Approx(1.0 / (2.0 * phys::pi * lifetime)).epsilon(1e-3));
}

TEST_CASE("photon carrier detuning shifts the spectral peak") {
  const auto grid = photon_grid(8192);
  const auto photon = lorentzian_photon(500e-12, 5e9, grid);
  std::size_t ip = 0;
  double peak = 0.0;
  for (std::size_t i = 0; i < grid.count; ++i)
    if (std::norm(photon.amplitude[i]) > peak) { peak = std::norm(photon.amplitude[i]); ip = i; }
  CHECK(grid.at(ip) == doctest::Approx(5e9).epsilon(1e-2));
}

TEST_CASE("photon construction rejects bad inputs") {
  const auto grid = photon_grid(4096);
  CHECK_THROWS_AS(lorentzian_photon(-1.0, 0.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(lorentzian_photon(500e-12, 100e9, grid), std::invalid_argument);
  // 20 ns photon is far too narrow for a 9.8 MHz grid step
  CHECK_THROWS_AS(lorentzian_photon(20e-9, 0.0, photon_grid(1024)), resolution_error);
}

TEST_CASE("transform round trip and Parseval hold to 1e-12") {
  const std::size_t n = 4096;
  const double t_step = 1e-10;
  const FrequencyGrid grid{-0.5 / t_step + 0.5 / (t_step * n), 1.0 / (t_step * n), n};
  const auto wp = gaussian_packet(80e-9, 6e-9, 0.0, t_step, n);
  const auto spec = to_spectrum(wp, grid);
  CHECK(std::abs(spec.energy() - wp.energy()) / wp.energy() < 1e-12);
  const auto back = to_time(spec, wp.t_start);
  double worst = 0.0, peak = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    worst = std::max(worst, std::abs(back.amplitude[j] - wp.amplitude[j]));
    peak = std::max(peak, std::abs(wp.amplitude[j]));
  }
  CHECK(worst / peak < 1e-12);
  CHECK(back.t_start == wp.t_start);
  CHECK(back.t_step == doctest::Approx(wp.t_step).epsilon(1e-15));
}

TEST_CASE("two-sample transform matches the hand-computed butterfly") {
  Wavepacket wp;
  wp.t_start = 0.0;
  wp.t_step = 0.5;
  wp.amplitude = {{1.0, 0.0}, {0.25, -0.5}};
  const FrequencyGrid grid{0.0, 1.0, 2};
  const auto spec = to_spectrum(wp, grid);
  // A(0) = (a0 + a1) dt, A(1) = (a0 + a1 e^{2 pi i * 1 * 0.5}) dt = (a0 - a1) dt
  const auto s0 = (wp.amplitude[0] + wp.amplitude[1]) * 0.5;
  const auto s1 = (wp.amplitude[0] - wp.amplitude[1]) * 0.5;
  CHECK(std::abs(spec.amplitude[0] - s0) < 1e-15);
  CHECK(std::abs(spec.amplitude[1] - s1) < 1e-15);
}

TEST_CASE("to_spectrum rejects a grid that is not the Fourier dual") {
  const auto wp = gaussian_packet(0.0, 1e-9, -10e-9, 1e-10, 1024);
  CHECK_THROWS_AS(to_spectrum(wp, FrequencyGrid{-1e9, 1e6, 1024}), std::invalid_argument);
  CHECK_THROWS_AS(to_spectrum(wp, FrequencyGrid{-1e9, 1.0 / (1e-10 * 2048), 2048}),
                  std::invalid_argument);
}

TEST_CASE("vacuum propagation in the co-vacuum frame is the identity") {
  const std::size_t n = 4096;
  const double t_step = 1e-10;
  const FrequencyGrid grid{-0.5 / (t_step) / 2.0, 1.0 / (t_step * n), n};
  const auto vac = vacuum_profile(grid, kNu0);
  const auto wp = gaussian_packet(150e-9, 8e-9, 0.0, t_step, n);
  const auto out = propagate_wavepacket(wp, vac, 0.25);
  double worst = 0.0, peak = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    worst = std::max(worst, std::abs(out.amplitude[j] - wp.amplitude[j]));
    peak = std::max(peak, std::abs(wp.amplitude[j]));
  }
  CHECK(worst / peak < 1e-10);
}

TEST_CASE("uniform index step delays by (n-1) L / c") {
  const std::size_t n = 4096;
  const double t_step = 1e-10;
  const FrequencyGrid grid{-0.5 / (t_step * n) * n / 2.0, 1.0 / (t_step * n), n};
  const auto wp = gaussian_packet(100e-9, 6e-9, 0.0, t_step, n);
  const double delay = 35.5 * t_step;
  const auto med = delay_medium(grid, delay, 0.25);
  const auto out = propagate_wavepacket(wp, med, 0.25);
  CHECK(extract_delay(wp, out, DelayMethod::centroid) ==
        doctest::Approx(delay).epsilon(1e-6));
  CHECK(extract_delay(wp, out, DelayMethod::peak) ==
        doctest::Approx(delay).epsilon(1e-3));
}

TEST_CASE("integer-bin delay reproduces the shifted samples") {
  const std::size_t n = 4096;
  const double t_step = 1e-10;
  const FrequencyGrid grid{-0.5 / (t_step * n) * n / 2.0, 1.0 / (t_step * n), n};
  const auto wp = gaussian_packet(100e-9, 6e-9, 0.0, t_step, n);
  const std::size_t bins = 24;
  const auto med = delay_medium(grid, bins * t_step, 0.25);
  const auto out = propagate_wavepacket(wp, med, 0.25);
  double worst = 0.0;
  for (std::size_t j = bins; j < n; ++j)
    worst = std::max(worst, std::abs(std::abs(out.amplitude[j]) -
                                     std::abs(wp.amplitude[j - bins])));
  CHECK(worst < 1e-9);
}

TEST_CASE("propagation through two half cells equals one full cell") {
  VaporConfig cfg;
  const FrequencyGrid grid = photon_grid(16384);
  const auto idx = index_from_susceptibility(
      build_susceptibility(cfg, default_line_table(), grid, Polarization::sigma_plus),
      cfg.line_center_frequency);
  const auto wp = to_time(lorentzian_photon(500e-12, 0.0, grid), -0.125 / grid.step);
  const auto once = propagate_wavepacket(wp, idx, 0.25);
  const auto twice = propagate_wavepacket(propagate_wavepacket(wp, idx, 0.125), idx, 0.125);
  double worst = 0.0, peak = 0.0;
  for (std::size_t j = 0; j < wp.amplitude.size(); ++j) {
    worst = std::max(worst, std::abs(once.amplitude[j] - twice.amplitude[j]));
    peak = std::max(peak, std::abs(once.amplitude[j]));
  }
  CHECK(worst / peak < 1e-10);
}

TEST_CASE("passive medium neither amplifies nor advances the packet") {
  VaporConfig cfg;
  const FrequencyGrid grid = photon_grid(16384);
  const auto idx = index_from_susceptibility(
      build_susceptibility(cfg, default_line_table(), grid, Polarization::sigma_plus),
      cfg.line_center_frequency);
  const auto wp = to_time(lorentzian_photon(500e-12, 0.0, grid), -0.125 / grid.step);
  const auto out = propagate_wavepacket(wp, idx, 0.25);
  CHECK(out.energy() <= wp.energy() * (1.0 + 1e-12));
  // no energy appears ahead of the input's own leading edge
  CHECK(energy_before(out, -2e-9) <= energy_before(wp, -2e-9) + 1e-4);
  // slow-light delay is positive and substantial
  CHECK(extract_delay(wp, out) > 1e-9);
}

TEST_CASE("fully opaque medium extinguishes the packet") {
  const std::size_t n = 2048;
  const double t_step = 1e-10;
  const FrequencyGrid grid{-0.5 / (t_step * n) * n / 2.0, 1.0 / (t_step * n), n};
  auto med = vacuum_profile(grid, kNu0);
  med.alpha.assign(n, 1e4);
  const auto wp = gaussian_packet(100e-9, 6e-9, 0.0, t_step, n);
  const auto out = propagate_wavepacket(wp, med, 0.25);
  CHECK(out.energy() < 1e-200);
}

TEST_CASE("delay beyond the window is reported as a window error") {
  const std::size_t n = 1024;
  const double t_step = 1e-9;
  const FrequencyGrid grid{-0.5 / (t_step * n) * n / 2.0, 1.0 / (t_step * n), n};
  const double window = t_step * n;
  const auto wp = gaussian_packet(0.5 * window, 0.05 * window, 0.0, t_step, n);
  const auto med = delay_medium(grid, 0.45 * window, 0.25);
  CHECK_THROWS_AS(propagate_wavepacket(wp, med, 0.25), window_error);
}

TEST_CASE("packet touching the window edge is rejected up front") {
  const std::size_t n = 1024;
  const double t_step = 1e-9;
  const FrequencyGrid grid{-0.5 / (t_step * n) * n / 2.0, 1.0 / (t_step * n), n};
  const auto wp = gaussian_packet(0.0, 0.05 * t_step * n, 0.0, t_step, n);
  CHECK_THROWS_AS(propagate_wavepacket(wp, vacuum_profile(grid, kNu0), 0.25),
                  std::invalid_argument);
}

TEST_CASE("oscillatory transmission leaves a multi-peaked packet") {
  VaporConfig cfg;
  cfg.temperature = 80.0 + 273.15;
  cfg.b_field = 0.008;
  const FrequencyGrid grid{-20e9, 40e9 / 16384.0, 16384};
  const auto idx = index_from_susceptibility(
      build_susceptibility(cfg, default_line_table(), grid, Polarization::sigma_plus),
      cfg.line_center_frequency);
  const auto wp = to_time(lorentzian_photon(500e-12, 0.0, grid), -0.125 / grid.step);
  const auto out = propagate_wavepacket(wp, idx, 0.25);
  std::vector<double> p(out.amplitude.size());
  double peak = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    p[j] = std::norm(out.amplitude[j]);
    peak = std::max(peak, p[j]);
  }
  int maxima = 0;
  for (std::size_t j = 1; j + 1 < p.size(); ++j)
    if (p[j] > p[j - 1] && p[j] > p[j + 1] && p[j] > 0.01 * peak) ++maxima;
  CHECK(maxima >= 2);
}

TEST_CASE("fft propagation matches a brute-force discrete transform") {
  VaporConfig cfg;
  const FrequencyGrid grid = photon_grid(4096);
  const auto idx = index_from_susceptibility(
      build_susceptibility(cfg, default_line_table(), grid, Polarization::sigma_plus),
      cfg.line_center_frequency);
  const double t_start = -0.125 / grid.step;
  const auto wp = to_time(lorentzian_photon(500e-12, 0.0, grid), t_start);
  const auto fast = propagate_wavepacket(wp, idx, 0.25);

  // independent O(N^2) evaluation of the same analysis / filter / synthesis
  const std::size_t n = grid.count;
  const auto h = detail::transfer_factor(idx, 0.25, true);
  std::vector<std::complex<double>> spec(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      acc += wp.amplitude[j] * detail::cis(2.0 * phys::pi * grid.at(k) * wp.time_at(j));
    spec[k] = acc * wp.t_step * h[k];
  }
  std::vector<std::complex<double>> slow(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      acc += spec[k] * detail::cis(-2.0 * phys::pi * grid.at(k) * wp.time_at(j));
    slow[j] = acc * grid.step;
  }
  double worst = 0.0, peak = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    worst = std::max(worst, std::abs(fast.amplitude[j] - slow[j]));
    peak = std::max(peak, std::abs(slow[j]));
  }
  CHECK(worst / peak < 1e-8);
}
