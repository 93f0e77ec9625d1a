#ifndef SLOWLIGHT_FFT_HPP
#define SLOWLIGHT_FFT_HPP

#include <complex>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "slowlight/constants.hpp"
#include "slowlight/grid.hpp"

namespace slowlight {

namespace detail {

// Twiddle factors e^{-i pi k / (n/2)}, k = 0..n/2-1, shared across calls.
inline std::shared_ptr<const std::vector<std::complex<double>>> twiddles(std::size_t n) {
  static std::mutex mu;
  static std::unordered_map<std::size_t, std::shared_ptr<const std::vector<std::complex<double>>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto tw = std::make_shared<std::vector<std::complex<double>>>(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double ang = -2.0 * phys::pi * static_cast<double>(k) / static_cast<double>(n);
    (*tw)[k] = {std::cos(ang), std::sin(ang)};
  }
  cache.emplace(n, tw);
  return tw;
}

}  // namespace detail

// In-place radix-2 DFT, X_k = sum_j x_j e^{-2 pi i j k / n}. inverse = true
// applies the conjugate kernel and the 1/n factor.
inline void fft(std::vector<std::complex<double>>& x, bool inverse = false) {
  const std::size_t n = x.size();
  if (n < 2) return;
  if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  auto tw = detail::twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> w = (*tw)[k * stride];
        if (inverse) w = std::conj(w);
        const auto u = x[i + k];
        const auto v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
      }
    }
  }
  if (inverse) {
    const double s = 1.0 / static_cast<double>(n);
    for (auto& v : x) v *= s;
  }
}

// Discrete Hilbert transform on a periodic grid: returns u with
// u = H[v] such that for v(x) = g/(x^2+g^2) (imaginary part of a
// resonance) the output is -x/(x^2+g^2)-like per the susceptibility
// convention chi = C/((omega0-omega) - i gamma). Concretely the
// transform-domain multiplier +i sgn / -i sgn is fixed by that pair.
inline std::vector<double> hilbert_dispersive(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::complex<double>> buf(n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = v[i];
  fft(buf, false);
  buf[0] = 0.0;
  buf[n / 2] = 0.0;
  for (std::size_t k = 1; k < n / 2; ++k) buf[k] *= std::complex<double>(0.0, 1.0);
  for (std::size_t k = n / 2 + 1; k < n; ++k) buf[k] *= std::complex<double>(0.0, -1.0);
  fft(buf, true);
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = buf[i].real();
  return u;
}

}  // namespace slowlight

#endif
