#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace qhm {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// The character e(t) = exp(2*pi*i*t). All phase factors in the library use
/// this convention; ebar(t) is its conjugate.
inline Complex cis(double t) {
  const double th = 2.0 * kPi * t;
  return {std::cos(th), std::sin(th)};
}

inline Complex cisbar(double t) { return std::conj(cis(t)); }

/// Lagrange interpolation weights for nodes base, base+1, ..., base+count-1
/// (grid units), evaluated at t. Writes `count` weights into w.
void lagrange_weights(double t, int base, int count, double* w);

/// Fornberg weights for the m-th derivative at 0 on the given node offsets.
std::vector<double> fd_weights(int deriv, const std::vector<double>& offsets);

/// Centered first-derivative stencil of the given (even) accuracy order on a
/// grid of spacing h: offsets -order/2 .. order/2, weights scaled by 1/h.
std::vector<double> central_first_derivative(int order, double h);

/// Counter-based deterministic RNG (splitmix64 over seed and counter), safe
/// to evaluate in any order and from parallel loops.
struct CounterRng {
  uint64_t seed = 0;

  uint64_t bits(uint64_t counter) const;
  double uniform(uint64_t counter) const;    // in [0, 1)
  double symmetric(uint64_t counter) const;  // in [-1, 1)
};

std::string base64_encode(const unsigned char* data, std::size_t len);
std::vector<unsigned char> base64_decode(const std::string& text);

uint64_t fnv1a(const std::string& s);

}  // namespace qhm
