#ifndef SLOWLIGHT_GRID_HPP
#define SLOWLIGHT_GRID_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace slowlight {

// Uniform frequency grid of relative detunings [Hz]. count must be a
// power of two so the time-domain twin maps onto a radix-2 transform.
struct FrequencyGrid {
  double start = 0.0;  // Hz, relative detuning of bin 0
  double step = 0.0;   // Hz
  std::size_t count = 0;

  double at(std::size_t i) const { return start + step * static_cast<double>(i); }
  double back() const { return at(count - 1); }
  double span() const { return step * static_cast<double>(count); }

  bool contains(double nu) const { return nu >= start && nu <= back(); }

  std::vector<double> frequencies() const {
    std::vector<double> f(count);
    for (std::size_t i = 0; i < count; ++i) f[i] = at(i);
    return f;
  }

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;
};

inline bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

inline void validate_grid(const FrequencyGrid& g) {
  if (!(g.step > 0.0)) throw std::invalid_argument("FrequencyGrid: step must be > 0");
  if (!is_pow2(g.count)) throw std::invalid_argument("FrequencyGrid: count must be a power of two >= 2");
}

}  // namespace slowlight

#endif
