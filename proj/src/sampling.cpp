#include "qhm/sampling.hpp"

#include <cmath>

namespace qhm {

namespace {

// separate counter streams per factory
constexpr uint64_t kXiStream = 0x10000000ULL;
constexpr uint64_t kDStream = 0x20000000ULL;
constexpr uint64_t kEStream = 0x30000000ULL;
constexpr uint64_t kSkewStream = 0x40000000ULL;

int draw_mode(const CounterRng& rng, uint64_t c, int lim) {
  return static_cast<int>(std::floor(rng.uniform(c) * (2 * lim + 1))) - lim;
}

}  // namespace

XiElement random_vector(ConfigPtr cfg, const CounterRng& rng, uint64_t ctr) {
  // widths and centers kept inside the band where every fiber-translation
  // sum truncates exactly at pMax: |x0| + tail reach < 2 pMax mu
  const uint64_t b = kXiStream + 8 * ctr;
  const double a = 2.6 + 0.8 * rng.uniform(b);
  const int n0 = draw_mode(rng, b + 1, 2);
  const double x0 = 0.3 * rng.symmetric(b + 2);
  return gaussian_vector(cfg, a, n0, x0);
}

DElement random_d(ConfigPtr cfg, const CounterRng& rng, uint64_t ctr, int fiberRange) {
  const uint64_t b = kDStream + 32 * ctr;
  DElement out(cfg);
  const int parts = 2;
  for (int i = 0; i < parts; ++i) {
    const uint64_t c = b + 8 * i;
    const int p0 = draw_mode(rng, c, fiberRange);
    const int n0 = draw_mode(rng, c + 1, 2);
    const double x0 = rng.uniform(c + 2);
    const double a = 2.0 + 1.5 * rng.uniform(c + 3);
    const Complex amp{rng.symmetric(c + 4), rng.symmetric(c + 5)};
    out = out + d_gaussian(cfg, p0, n0, x0, a, amp);
  }
  return out;
}

EElement random_e(ConfigPtr cfg, const CounterRng& rng, uint64_t ctr, int fiberRange) {
  const uint64_t b = kEStream + 32 * ctr;
  EElement out(cfg);
  const int parts = 2;
  for (int i = 0; i < parts; ++i) {
    const uint64_t c = b + 8 * i;
    const int k0 = draw_mode(rng, c, fiberRange);
    const int n0 = draw_mode(rng, c + 1, 2);
    const double x0 = 2.0 * cfg->mu() * rng.uniform(c + 2);
    const double a = 2.0 + 1.0 * rng.uniform(c + 3);
    const Complex amp{rng.symmetric(c + 4), rng.symmetric(c + 5)};
    out = out + e_gaussian(cfg, k0, n0, x0, a, amp);
  }
  return out;
}

EElement random_skew(ConfigPtr cfg, const CounterRng& rng, uint64_t ctr) {
  const uint64_t b = kSkewStream + 32 * ctr;
  const EElement chi = random_e(cfg, rng, ctr ^ 0x5151, 1);
  const EElement star = e_star(chi);
  if (rng.uniform(b + 30) < 0.5) {
    return chi - star;
  }
  return Complex{0, 1} * (chi + star);
}

EElement random_unitary(ConfigPtr cfg, const CounterRng& rng, uint64_t ctr, double scale) {
  // Generators live at fiber 0 with |n0| <= 1 so every power of the series
  // stays inside the stored fiber and mode ranges. They are kept wide: the
  // n-th series term has an x-profile n times narrower than the generator,
  // and it must stay resolved on the grid.
  const uint64_t b = kSkewStream + 64 * ctr + 7;
  const int n0 = draw_mode(rng, b, 1);
  const double x0 = 2.0 * cfg->mu() * rng.uniform(b + 1);
  const double a = 1.0 + 0.4 * rng.uniform(b + 2);
  const Complex amp{rng.symmetric(b + 3), rng.symmetric(b + 4)};
  const EElement chi = e_gaussian(cfg, 0, n0, x0, a, amp);
  const EElement skew = Complex{0, 0.5} * (chi + e_star(chi)) + (chi - e_star(chi));
  return e_exp(Complex{scale, 0} * skew);
}

}  // namespace qhm
